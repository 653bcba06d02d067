#pragma once

// Exponential fallbacks: exhaustive 2-coloring search, smallest partition
// into independent classes, and Fano plane utilities.

#include "khg/hypergraph.hpp"
#include "khg/report.hpp"

#include <optional>
#include <vector>

namespace khg {

inline constexpr int EXHAUSTIVE_N_CAP = 30;
inline constexpr int CHROMATIC_N_CAP = 15;
inline constexpr int FANO_SCAN_N_CAP = 10;

// First valid 2-coloring in code order: vertex 0 is pinned to X; the
// remaining labels are read as a binary code (bit j set = vertex j+1 on X)
// and codes are tried lowest first. The search prunes assignments that
// already contain a monochromatic edge, which cannot change which code is
// returned. none when no 2-coloring exists.
std::optional<Bipartition> exhaustive_bipartition(const Hypergraph& h, int n_cap = EXHAUSTIVE_N_CAP);

// All valid 2-colorings with vertex 0 on X, in code order, up to `limit`.
std::vector<Bipartition> list_bipartitions(const Hypergraph& h, std::size_t limit,
                                           int n_cap = EXHAUSTIVE_N_CAP);

// Smallest r <= r_cap admitting a partition into r independent classes.
// Backtracking over vertices in id order with class ids first-used in order
// and vertex 0 in class 0.
ChromaticPartition smallest_partition(const Hypergraph& h, int r_cap, int n_cap = CHROMATIC_N_CAP);

// The 7 lines of the unique (7,3,1)-design.
Hypergraph fano_plane();

// All C(n, k) possible edges.
Hypergraph complete_hypergraph(int n, int k);

// True iff some injection of the 7 design points into the vertices maps all
// 7 lines onto edges. 3-uniform input only; gated to small n.
bool contains_fano(const Hypergraph& h, int n_cap = FANO_SCAN_N_CAP);

// Thresholding solver extended with a smallest-partition stage, for
// 3-uniform inputs that may not be 2-colorable at all. Reports which case
// produced the answer and the partition size r.
SolveReport solve_fano(const Hypergraph& h);

} // namespace khg
