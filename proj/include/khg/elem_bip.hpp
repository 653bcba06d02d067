#pragma once

// Joint-degree thresholding solver: classify consecutive vertex pairs as
// same-side or cross by comparing their joint degree against a fixed
// rational cutoff, check the resulting 2-labeling, and fall back to the
// exhaustive search when it is not a valid 2-coloring.

#include "khg/hypergraph.hpp"
#include "khg/rational.hpp"
#include "khg/report.hpp"

#include <cstdint>
#include <vector>

namespace khg {

// (1/4) C(n, k-1) (1 - 3/2^k), exactly. This is the midpoint of the leading
// terms of the expected same-side and cross joint degrees of the planted
// model. Requires n > k >= 3.
Rational elem_threshold(int n, int k);

struct ElemTrace {
    Rational threshold;
    std::vector<std::uint64_t> degrees; // joint degree of (i, i+1), length n-1
    Bipartition candidate;              // vertex 0 on the start side
};

// Joint degrees of all consecutive pairs. Uses neighborhood bitsets over
// ranked (k-1)-sets when they fit in memory, else sorted rank lists; both
// agree exactly.
std::vector<std::uint64_t> consecutive_joint_degrees(const Hypergraph& h);

// Steps 1-2: vertex 0 gets `start`; vertex i+1 joins vertex i's side iff
// deg(i, i+1) >= threshold (exact comparison), otherwise the opposite side.
ElemTrace elem_candidate(const Hypergraph& h, Side start = Side::X);

// Full driver. Requires k >= 3 and n >= 2.
SolveReport solve_elem(const Hypergraph& h);

} // namespace khg
