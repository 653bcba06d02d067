#pragma once

// Regularity-route solver: build the link graph of a small (k-2)-set J,
// regular-partition it, read an approximate 2-coloring off the cluster
// structure, then repair it by degree voting and verify.

#include "khg/graph.hpp"
#include "khg/hypergraph.hpp"
#include "khg/regularity.hpp"
#include "khg/report.hpp"

#include <optional>
#include <vector>

namespace khg {

struct ApproxCandidate {
    std::vector<Vertex> j;  // the (k-2)-set; always on the X side
    Bipartition partition;  // over all n vertices
    // provenance of the class split
    int t = 0;
    std::size_t regular_pairs = 0;
    std::vector<int> minus_classes;       // low cluster degree -> X side
    std::vector<int> plus_sparse_classes; // high degree, sparse inside -> X side
    std::vector<int> plus_dense_classes;  // high degree, dense inside -> Y side
    bool degraded = false;                // regularity engine stopped on a cap
    // link-graph structures, for diagnostics and dumps
    EquitablePartition link_partition;
    ClusterGraph link_cluster;
    std::vector<Vertex> link_to_parent;
};

struct RegBipConfig {
    // Working regularity scale. The asymptotically faithful constant is far
    // below anything a terminating class count can honor, so the default is
    // a practical scale; accuracy contracts are exercised in the tests.
    double epsilon = 0.1;
    RegConfig reg;                                   // t0 / t_cap / iterations / certificate
    std::optional<std::vector<Vertex>> l_override;   // replaces the default index set L
};

// Split the high-cluster-degree classes by internal link-graph edge count:
// sparse means e(V_i) < |V_i|^2 / 100 (exact integer comparison).
std::pair<std::vector<int>, std::vector<int>>
dense_sparse_split(const Graph& link_graph, const EquitablePartition& pi,
                   const std::vector<int>& plus);

// |J| must be k-2. Deterministic given (h, j_set, cfg).
ApproxCandidate approx_bipartition(const Hypergraph& h, std::span<const Vertex> j_set,
                                   const RegBipConfig& cfg);

// Degree vote: u joins X iff deg(u, X \ u) <= deg(u, Y \ u), ties to X.
Bipartition edit_bipartition(const Hypergraph& h, const Bipartition& cand);

// Driver: iterate J over the (k-2)-subsets of L = {0, ..., 2k-6} in
// lexicographic order, edit each approximate candidate, and return the
// first that 2-colors the input; falls back to the exhaustive search.
// Inputs with n <= 2k (or too small an L) go straight to the fallback.
SolveReport solve_reg(const Hypergraph& h, const RegBipConfig& cfg = {});

} // namespace khg
