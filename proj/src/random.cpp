#include "khg/random.hpp"

#include "khg/combinatorics.hpp"
#include "khg/rational.hpp"

#include <algorithm>
#include <numeric>

namespace khg {

namespace {

constexpr std::uint64_t TAG_EDGES = 1;
constexpr std::uint64_t TAG_PART = 2;
constexpr std::uint64_t TAG_SHUFFLE = 3;

constexpr int REJECTION_CAP = 10000;

} // namespace

PartitionSpec PartitionSpec::parse(const std::string& name, double gamma) {
    PartitionSpec spec;
    spec.gamma = gamma;
    if (name == "exact-balanced")
        spec.mode = Mode::ExactBalanced;
    else if (name == "binomial")
        spec.mode = Mode::Binomial;
    else if (name == "gamma-equitable")
        spec.mode = Mode::GammaEquitable;
    else
        throw ValidationError("unknown partition mode: " + name);
    return spec;
}

PlantedInstance sample_planted(int n, int k, const Bipartition& planted, std::uint64_t seed) {
    if (static_cast<std::size_t>(n) != planted.size())
        throw ValidationError("planted partition length mismatch");
    std::size_t nx = planted.count(Side::X);
    if (nx == 0 || nx == planted.size())
        throw ValidationError("planted partition must have two nonempty sides");

    std::uint64_t stream = rng::derive(seed, TAG_EDGES);
    std::vector<std::vector<Vertex>> edges;
    std::uint64_t rank = 0;
    for_each_subset(n, k, [&](std::span<const int> tuple) {
        Side s0 = planted.side(tuple[0]);
        bool crossing = false;
        for (int v : tuple.subspan(1))
            if (planted.side(v) != s0) {
                crossing = true;
                break;
            }
        if (crossing && (rng::element(stream, rank) >> 63)) {
            edges.emplace_back(tuple.begin(), tuple.end());
        }
        ++rank;
    });
    return PlantedInstance{Hypergraph::build(n, k, edges), planted, seed, Model::Planted};
}

Bipartition sample_partition(int n, const PartitionSpec& spec, std::uint64_t seed) {
    if (n < 2) throw ValidationError("partition needs at least two vertices");
    std::uint64_t stream = rng::derive(seed, TAG_PART);

    if (spec.mode == PartitionSpec::Mode::ExactBalanced) {
        std::vector<Vertex> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        rng::Engine eng(rng::derive(seed, TAG_SHUFFLE));
        for (std::size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[eng.below(i + 1)]);
        Bipartition p(static_cast<std::size_t>(n), Side::Y);
        for (int i = 0; i < n / 2; ++i) p.set(perm[static_cast<std::size_t>(i)], Side::X);
        return p;
    }

    Rational g = Rational::from_double(spec.gamma);
    if (spec.mode == PartitionSpec::Mode::GammaEquitable && !(Rational(0) < g && g < Rational(1)))
        throw ValidationError("gamma must lie in (0,1)");

    for (int attempt = 0; attempt < REJECTION_CAP; ++attempt) {
        std::uint64_t coins = rng::element(stream, static_cast<std::uint64_t>(attempt));
        Bipartition p(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v)
            p.set(v, (rng::element(coins, static_cast<std::uint64_t>(v)) >> 63) ? Side::Y : Side::X);
        std::size_t nx = p.count(Side::X);
        if (nx == 0 || nx == static_cast<std::size_t>(n)) continue;
        if (spec.mode == PartitionSpec::Mode::Binomial) return p;
        // (1-gamma) n/2 <= smaller and larger <= (1+gamma) n/2, exactly.
        auto smaller = static_cast<std::int64_t>(std::min(nx, static_cast<std::size_t>(n) - nx));
        auto larger = static_cast<std::int64_t>(std::max(nx, static_cast<std::size_t>(n) - nx));
        Rational half(n, 2);
        if ((Rational(1) - g) * half <= Rational(smaller) &&
            Rational(larger) <= (Rational(1) + g) * half)
            return p;
    }
    throw CapExceededError("partition rejection cap reached");
}

PlantedInstance sample_near_uniform(int n, int k, const PartitionSpec& spec, std::uint64_t seed) {
    Bipartition part = sample_partition(n, spec, seed);
    PlantedInstance inst = sample_planted(n, k, part, seed);
    inst.model = Model::NearUniform;
    return inst;
}

} // namespace khg
