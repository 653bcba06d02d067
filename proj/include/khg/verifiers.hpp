#pragma once

// Checkable structural predicates for planted instances: joint-degree bands,
// the size / degree / link-density typicality battery, side-balance, and
// empirical joint-degree statistics.

#include "khg/hypergraph.hpp"
#include "khg/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace khg {

enum class DegreeCase { SameX, SameY, Cross };

// Expected joint degree of a pair under the planted model with the given
// side sizes, as an exact rational:
//   same-X:  (1/4) (C(n-2, k-1) - C(|X|-2, k-1))
//   same-Y:  (1/4) (C(n-2, k-1) - C(|Y|-2, k-1))
//   cross:   (1/4) (C(n-2, k-1) - C(|X|-1, k-1) - C(|Y|-1, k-1))
Rational expected_joint_degree(int n, int k, std::pair<int, int> sizes, DegreeCase c);

struct SigmaViolation {
    Vertex u = 0, v = 0;
    std::uint64_t observed = 0;
    double band_lo = 0, band_hi = 0;
    bool same_side = false;
};

struct SigmaReport {
    double sigma = 0;
    bool sigma_in_theory_range = true; // 0 < sigma < 2^-k
    std::vector<SigmaViolation> violations;
    bool pass = false; // no violations
    std::size_t pairs_checked = 0;
};

// Tests every unordered pair against the band
//   same side: (1/4) C(n,k-1) (1 - 1/2^(k-1) +- sigma)
//   cross:     (1/4) C(n,k-1) (1 - 2/2^(k-1) +- sigma)
// with exact rational band comparisons. Cost O(n^2 n^(k-1)), gated by n_cap.
SigmaReport check_sigma_standard(const Hypergraph& h, const Bipartition& p, double sigma,
                                 int n_cap = 512);

struct QViolation {
    Vertex vertex = 0;
    std::uint64_t observed = 0;
    double lo = 0, hi = 0;
};

struct RViolation {
    std::vector<Vertex> j;
    int property = 0; // 1, 2 or 3
    std::uint64_t observed = 0;
    double lo = 0, hi = 0;
};

struct TypicalityReport {
    double delta = 0;
    bool p_pass = false;
    std::string p_note; // counterexample description when P fails
    bool q_pass = false;
    std::vector<QViolation> q_violations;
    bool r_pass = false;
    std::size_t r_samples = 0; // triples evaluated
    std::vector<RViolation> r_violations;
    bool exact_mode = false;
    std::uint64_t seed = 0;

    bool pass() const { return p_pass && q_pass && r_pass; }
};

// (P) side sizes within (1 +- delta) n/2, exact.
// (Q) every cross degree deg(x, Y) within (1 +- delta) (1/2) C(|Y|, k-1)
//     and symmetrically, exact over all vertices.
// (R) link-density checks over disjoint triples (J, X0, Y0) with
//     |X0|, |Y0| > delta n: cross density ~ 1/2, inside density ~ 1/2 when J
//     is not fully on that side and exactly zero when it is. Exhaustive for
//     n <= exact_cap, else Monte Carlo over `samples` seeded triples.
TypicalityReport check_delta_typical(const Hypergraph& h, const Bipartition& p, double delta,
                                     int samples, std::uint64_t seed, int exact_cap = 12);

// (1 - gamma) n/2 <= |smaller side| <= |larger side| <= (1 + gamma) n/2.
bool check_gamma_equitable(const Bipartition& p, double gamma);

struct CaseStats {
    std::size_t pairs = 0;
    double mean = 0, min = 0, max = 0;
    double expected = 0;      // from expected_joint_degree
    double rel_deviation = 0; // |mean - expected| / expected
};

struct JointDegreeStats {
    CaseStats same_x, same_y, cross;
};

JointDegreeStats joint_degree_stats(const Hypergraph& h, const Bipartition& p, int n_cap = 512);

} // namespace khg
