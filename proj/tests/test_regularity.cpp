#include "khg/regularity.hpp"

#include "khg/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace khg;

namespace {

Graph complete_bipartite(int na, int nb) {
    Graph g(na + nb);
    for (Vertex a = 0; a < na; ++a)
        for (Vertex b = 0; b < nb; ++b) g.add_edge(a, na + b);
    return g;
}

Graph random_half_graph(int n, std::uint64_t seed) {
    Graph g(n);
    std::uint64_t idx = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng::element(seed, idx++) >> 63) g.add_edge(u, v);
    return g;
}

// planted-style link graph: X-X empty, X-Y and Y-Y at density 1/2
Graph planted_link_graph(int n, const Bipartition& p, std::uint64_t seed) {
    Graph g(n);
    std::uint64_t idx = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            ++idx;
            if (p.side(u) == Side::X && p.side(v) == Side::X) continue;
            if (rng::element(seed, idx) >> 63) g.add_edge(u, v);
        }
    return g;
}

} // namespace

TEST_CASE("pair density") {
    Graph g = complete_bipartite(4, 5);
    BitSet a(9), b(9);
    for (int i = 0; i < 4; ++i) a.set(static_cast<std::size_t>(i));
    for (int i = 4; i < 9; ++i) b.set(static_cast<std::size_t>(i));
    CHECK(pair_density(g, a, b) == 1.0);

    Graph empty(9);
    CHECK(pair_density(empty, a, b) == 0.0);

    // 5-cycle, A = {0}, B = {1, 2}
    Graph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
    CHECK(pair_density(c5, BitSet::of(5, {0}), BitSet::of(5, {1, 2})) == 0.5);

    CHECK_THROWS_AS(pair_density(g, BitSet(9), b), ValidationError);
    CHECK_THROWS_AS(pair_density(g, a, a), ValidationError);
}

TEST_CASE("complete and empty pairs certify at any size") {
    for (int sz : {8, 40}) {
        Graph g = complete_bipartite(sz, sz);
        BitSet a(static_cast<std::size_t>(2 * sz)), b(static_cast<std::size_t>(2 * sz));
        for (int i = 0; i < sz; ++i) a.set(static_cast<std::size_t>(i));
        for (int i = sz; i < 2 * sz; ++i) b.set(static_cast<std::size_t>(i));
        auto v = check_regular_pair(g, a, b, 0.1, RegConfig::Certificate::WitnessHeuristic);
        CHECK(v.kind == RegularityVerdict::Kind::Certified);
        Graph e(2 * sz);
        auto w = check_regular_pair(e, a, b, 0.1, RegConfig::Certificate::WitnessHeuristic);
        CHECK(w.kind == RegularityVerdict::Kind::Certified);
    }
}

TEST_CASE("a half-complete half-empty pair is flagged with a genuine witness") {
    auto run = [](int sz, RegConfig::Certificate mode) {
        // A = 0..sz-1, B = sz..2sz-1; only the first half of A sees B
        Graph g(2 * sz);
        for (Vertex a = 0; a < sz / 2; ++a)
            for (Vertex b = sz; b < 2 * sz; ++b) g.add_edge(a, b);
        BitSet a(static_cast<std::size_t>(2 * sz)), b(static_cast<std::size_t>(2 * sz));
        for (int i = 0; i < sz; ++i) a.set(static_cast<std::size_t>(i));
        for (int i = sz; i < 2 * sz; ++i) b.set(static_cast<std::size_t>(i));
        auto v = check_regular_pair(g, a, b, 0.1, mode);
        REQUIRE(v.kind == RegularityVerdict::Kind::Irregular);
        // the witness must genuinely violate the definition
        double d = pair_density(g, a, b);
        double dw = pair_density(g, v.witness_a, v.witness_b);
        CHECK(std::fabs(dw - d) >= 0.1);
        CHECK(static_cast<double>(v.witness_a.count()) > 0.1 * sz);
        CHECK(static_cast<double>(v.witness_b.count()) > 0.1 * sz);
    };
    run(12, RegConfig::Certificate::ExhaustiveSmall);
    run(40, RegConfig::Certificate::WitnessHeuristic);
}

TEST_CASE("random half-density pairs certify at working sizes") {
    int certified = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Graph g = random_half_graph(60, seed);
        BitSet a(60), b(60);
        for (int i = 0; i < 30; ++i) a.set(static_cast<std::size_t>(i));
        for (int i = 30; i < 60; ++i) b.set(static_cast<std::size_t>(i));
        auto v = check_regular_pair(g, a, b, 0.1, RegConfig::Certificate::WitnessHeuristic);
        certified += v.kind == RegularityVerdict::Kind::Certified;
    }
    CHECK(certified >= 18);
}

TEST_CASE("exhaustive-small is exact and size-gated") {
    Graph g = random_half_graph(20, 4);
    BitSet a(20), b(20);
    for (int i = 0; i < 10; ++i) a.set(static_cast<std::size_t>(i));
    for (int i = 10; i < 20; ++i) b.set(static_cast<std::size_t>(i));
    auto v = check_regular_pair(g, a, b, 0.1, RegConfig::Certificate::ExhaustiveSmall);
    CHECK(v.kind != RegularityVerdict::Kind::Unknown);
    if (v.kind == RegularityVerdict::Kind::Irregular) {
        double d = pair_density(g, a, b);
        CHECK(std::fabs(pair_density(g, v.witness_a, v.witness_b) - d) >= 0.1);
    }

    BitSet big(40), other(40);
    for (int i = 0; i < 20; ++i) big.set(static_cast<std::size_t>(i));
    for (int i = 20; i < 40; ++i) other.set(static_cast<std::size_t>(i));
    CHECK_THROWS_AS(
        check_regular_pair(Graph(40), big, other, 0.1, RegConfig::Certificate::ExhaustiveSmall),
        ValidationError);
}

TEST_CASE("regularize on trivial graphs certifies the initial partition") {
    RegConfig cfg;
    cfg.t0 = 4;
    Graph empty(32);
    RegularizeResult r = regularize(empty, cfg);
    CHECK(r.stop == RegStop::BudgetMet);
    CHECK(r.partition.t == 4);
    CHECK(r.cluster.regular_pairs.size() == 6);
    CHECK(r.rounds.size() == 1);

    Graph complete(32);
    for (Vertex u = 0; u < 32; ++u)
        for (Vertex v = u + 1; v < 32; ++v) complete.add_edge(u, v);
    RegularizeResult rc = regularize(complete, cfg);
    CHECK(rc.stop == RegStop::BudgetMet);
    CHECK(rc.cluster.regular_pairs.size() == 6);
}

TEST_CASE("regularize separates a planted link graph and stays sound") {
    PartitionSpec spec;
    Bipartition p = sample_partition(300, spec, 17);
    Graph g = planted_link_graph(300, p, 17);
    RegConfig cfg;
    cfg.epsilon = 0.1;
    cfg.t0 = 8;
    RegularizeResult r = regularize(g, cfg);
    CHECK(r.stop == RegStop::BudgetMet);

    // budget: all but eps t^2 pairs certified
    double t = static_cast<double>(r.partition.t);
    CHECK(static_cast<double>(r.cluster.regular_pairs.size()) >=
          t * (t - 1) / 2 - cfg.epsilon * t * t);

    // equitability after every round (final partition checked directly)
    CHECK(r.partition.equitable());
    for (const auto& round : r.rounds) CHECK(round.max_class_size - round.min_class_size <= 1);

    // index is monotone over rounds
    for (std::size_t i = 1; i < r.rounds.size(); ++i)
        CHECK(r.rounds[i].index >= r.rounds[i - 1].index - 1e-12);

    // classes align with the planted sides
    auto classes = r.partition.class_sets(300);
    BitSet xs = p.side_set(Side::X);
    int pure = 0;
    for (const auto& cls : classes) {
        double inx = static_cast<double>(cls.count_and(xs));
        double size = static_cast<double>(cls.count());
        double minority = std::min(inx, size - inx);
        if (minority < cfg.epsilon * size) ++pure;
    }
    CHECK(static_cast<double>(pure) >= 0.9 * static_cast<double>(r.partition.t));

    // determinism
    RegularizeResult r2 = regularize(g, cfg);
    CHECK(r2.partition.assignment == r.partition.assignment);
    CHECK(r2.cluster.regular_pairs == r.cluster.regular_pairs);
}

TEST_CASE("certified pairs re-verify exactly when classes are small") {
    PartitionSpec spec;
    Bipartition p = sample_partition(96, spec, 23);
    Graph g = planted_link_graph(96, p, 23);
    RegConfig cfg;
    cfg.epsilon = 0.1;
    cfg.t0 = 8; // class size 12: inside the exact-decision regime
    RegularizeResult r = regularize(g, cfg);
    auto classes = r.partition.class_sets(96);
    for (auto [i, j] : r.cluster.regular_pairs) {
        auto v = check_regular_pair(g, classes[static_cast<std::size_t>(i)],
                                    classes[static_cast<std::size_t>(j)], cfg.epsilon,
                                    RegConfig::Certificate::ExhaustiveSmall);
        CHECK(v.kind == RegularityVerdict::Kind::Certified);
    }
}

TEST_CASE("cluster degree split") {
    ClusterGraph complete;
    complete.t = 10;
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) complete.regular_pairs.emplace_back(i, j);
    ClusterSplit s = cluster_degree_split(complete, 0.04);
    CHECK(s.plus.size() == 10); // degree 9 >= 0.6 * 10
    CHECK(s.minus.empty());

    ClusterGraph empty;
    empty.t = 10;
    ClusterSplit se = cluster_degree_split(empty, 0.04);
    CHECK(se.plus.empty());
    CHECK(se.minus.size() == 10);

    // vertex 9 kept at degree 5 while everyone else stays high
    ClusterGraph mid = complete;
    mid.regular_pairs.clear();
    for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j) mid.regular_pairs.emplace_back(i, j);
    for (int i = 0; i < 5; ++i) mid.regular_pairs.emplace_back(i, 9);
    std::sort(mid.regular_pairs.begin(), mid.regular_pairs.end());
    ClusterSplit sm = cluster_degree_split(mid, 0.04);
    CHECK(std::find(sm.minus.begin(), sm.minus.end(), 9) != sm.minus.end());
    CHECK(sm.plus.size() == 9); // 5 < 6 cutoff, 8 >= 6
}

TEST_CASE("regularize hits the class cap and flags the result") {
    // exact verdicts at small class sizes find genuine irregularity in a
    // random graph, and the cap stops the refinement with a degraded result
    Graph g = random_half_graph(32, 12);
    RegConfig cfg;
    cfg.t0 = 4;
    cfg.t_cap = 4;
    RegularizeResult r = regularize(g, cfg);
    CHECK(r.stop != RegStop::BudgetMet);
    CHECK(r.degraded());
    CHECK(r.partition.t == 4);
    CHECK(r.partition.equitable());
}

TEST_CASE("regularize configuration validation") {
    Graph g(10);
    RegConfig bad;
    bad.t0 = 0;
    CHECK_THROWS_AS(regularize(g, bad), ValidationError);
    RegConfig toobig;
    toobig.t0 = 20;
    toobig.t_cap = 20;
    CHECK_THROWS_AS(regularize(g, toobig), ValidationError);
    RegConfig eps;
    eps.epsilon = 1.5;
    eps.t0 = 2;
    CHECK_THROWS_AS(regularize(g, eps), ValidationError);
}
