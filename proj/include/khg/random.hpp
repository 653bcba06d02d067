#pragma once

// Seeded generators for the planted binomial bipartite model and for
// near-uniform instance sampling.
//
// All randomness comes from one named primitive: the SplitMix64 sequence
//   element(seed, i) = mix64(seed + (i+1) * GAMMA64).
// Substreams are derived by tag: stream(seed, tag) = element(seed, tag).
// Fixed stream tags:
//   tag 1  edge coins      candidate k-set with colex rank r is an edge iff
//                          the top bit of element(stream, r) is set
//   tag 2  partition coins vertex v's side on rejection attempt a is the top
//                          bit of element(element(stream, a), v)
//   tag 3  shuffling       sequential draws for the balanced shuffle
// This gives bit-identical instances for equal parameters on any platform.

#include "khg/hypergraph.hpp"
#include "khg/errors.hpp"

#include <cstdint>
#include <string>

namespace khg {

namespace rng {

inline constexpr std::uint64_t GAMMA64 = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t element(std::uint64_t seed, std::uint64_t i) {
    return mix64(seed + (i + 1) * GAMMA64);
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a) { return element(seed, a); }
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return element(element(seed, a), b);
}

// Sequential SplitMix64 engine for shuffles and bounded draws.
class Engine {
public:
    explicit Engine(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += GAMMA64;
        return mix64(state_);
    }
    // Uniform in [0, bound) by rejection, bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

} // namespace rng

enum class Model { Planted, NearUniform };

struct PartitionSpec {
    enum class Mode { ExactBalanced, Binomial, GammaEquitable };
    Mode mode = Mode::ExactBalanced;
    double gamma = 0.1; // only for GammaEquitable

    static PartitionSpec parse(const std::string& name, double gamma);
};

struct PlantedInstance {
    Hypergraph hypergraph;
    Bipartition planted;
    std::uint64_t seed;
    Model model;
};

// Every k-set crossing the planted partition becomes an edge independently
// with probability 1/2; no k-set inside either side. Both sides must be
// nonempty.
PlantedInstance sample_planted(int n, int k, const Bipartition& planted, std::uint64_t seed);

// ExactBalanced: sizes floor(n/2) / ceil(n/2) via a seeded shuffle.
// Binomial: independent per-vertex coins, rejecting empty sides.
// GammaEquitable: binomial coins rejected until
//   (1-gamma) n/2 <= |smaller side| <= |larger side| <= (1+gamma) n/2.
// Rejection is capped at 10^4 attempts.
Bipartition sample_partition(int n, const PartitionSpec& spec, std::uint64_t seed);

// sample_partition composed with sample_planted on derived streams. Weights
// each hypergraph by its number of bipartitions, which is 1 for all but an
// exponentially small fraction of the class, so the bias is negligible at
// the sizes this tool targets.
PlantedInstance sample_near_uniform(int n, int k, const PartitionSpec& spec, std::uint64_t seed);

} // namespace khg
