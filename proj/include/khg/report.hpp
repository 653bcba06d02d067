#pragma once

// Solver outcome record shared by the elem / reg / fano drivers and the
// bench harness.

#include "khg/hypergraph.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace khg {

enum class SolvePath { Step3i, Step3ii, Step3iii };
enum class SolveStatus { Ok, NotBipartite, CapExceeded };

inline const char* to_string(SolvePath p) {
    switch (p) {
    case SolvePath::Step3i: return "step3i";
    case SolvePath::Step3ii: return "step3ii";
    case SolvePath::Step3iii: return "step3iii";
    }
    return "?";
}

inline const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Ok: return "ok";
    case SolveStatus::NotBipartite: return "not-bipartite";
    case SolveStatus::CapExceeded: return "cap-exceeded";
    }
    return "?";
}

// Per-J diagnostics of the reg driver.
struct JRecord {
    std::vector<Vertex> j;
    int t = 0;
    std::size_t regular_pairs = 0;
    std::size_t x_approx_size = 0;
    std::size_t sym_diff_to_output = 0;
    bool independent = false;
    bool degraded = false;
};

// Partition into r independent classes; assignment maps vertex -> class id.
struct ChromaticPartition {
    int r = 0;
    std::vector<int> assignment;
    // true when the search at r-1 classes completed without a solution
    bool minimality_certified = false;
};

struct SolveReport {
    std::string algo;
    SolveStatus status = SolveStatus::Ok;
    SolvePath path = SolvePath::Step3i;
    std::optional<Bipartition> partition;
    std::int64_t stage1_ns = 0;
    std::int64_t stage2_ns = 0;
    std::int64_t stage3_ns = 0;
    int n = 0;
    int k = 0;
    std::size_t m = 0;
    std::vector<JRecord> j_records;              // reg only
    int fano_case = 0;                           // fano only: 1, 2 or 3
    std::optional<ChromaticPartition> chromatic; // fano only

    std::int64_t total_ns() const { return stage1_ns + stage2_ns + stage3_ns; }
};

inline std::int64_t elapsed_ns(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

} // namespace khg
