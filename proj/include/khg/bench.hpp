#pragma once

// Ensemble benchmark harness: seeded instance generation, per-trial stage
// timings, CSV emission, and a log-log scaling fit.

#include "khg/random.hpp"
#include "khg/reg_bip.hpp"
#include "khg/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace khg {

struct EnsembleConfig {
    int k = 3;
    std::vector<int> n_list;
    int trials = 1;
    std::uint64_t seed = 1;
    Model model = Model::Planted;
    PartitionSpec partition;          // ExactBalanced for planted runs by default
    std::string algo = "elem";        // elem | reg | fano
    RegBipConfig reg;                 // parameters for algo == "reg"
    std::int64_t time_budget_ms = 0;  // 0: unlimited; exceedance clears the success flag
    int threads = 1;

    void validate() const;
};

struct BenchRecord {
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    std::string algo;
    std::string path; // step3i | step3ii | step3iii | error
    std::int64_t stage1_ns = 0;
    std::int64_t stage2_ns = 0;
    std::int64_t stage3_ns = 0;
    std::int64_t total_ns = 0;
    bool success = false;
    bool recovered_planted = false;

    bool operator==(const BenchRecord&) const = default;
};

inline constexpr const char* BENCH_CSV_HEADER =
    "n,k,seed,algo,path,stage1_ns,stage2_ns,stage3_ns,total_ns,success,recovered_planted";

// One record per (n, trial), in that order regardless of worker completion
// order. Per-trial seeds derive from cfg.seed, n and the trial index. When a
// sink is given, rows stream out as soon as their prefix is complete.
std::vector<BenchRecord> run_bench(const EnsembleConfig& cfg, std::ostream* csv_sink = nullptr);

void write_csv(std::ostream& out, std::span<const BenchRecord> records);
std::vector<BenchRecord> read_csv(std::istream& in);

struct ScalingFit {
    double slope = 0;
    double ci_lo = 0, ci_hi = 0; // bootstrap percentile interval
    std::vector<std::pair<int, double>> mean_ns_by_n;
};

// Least-squares slope of log(mean time on the fast path) against log n over
// records with path step3i. Needs at least 3 distinct n with 10 records
// each.
ScalingFit fit_scaling(std::span<const BenchRecord> records, int bootstrap = 200,
                       std::uint64_t seed = 1);

} // namespace khg
