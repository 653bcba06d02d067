#include "khg/reg_bip.hpp"

#include "khg/exhaustive.hpp"
#include "khg/random.hpp"
#include "khg/verifiers.hpp"
#include "oracles.hpp"

#include <cmath>

#include <doctest.h>

using namespace khg;

TEST_CASE("dense/sparse class split uses the exact 1/100 cutoff") {
    // two classes of 20; class 0 carries 4 internal edges, class 1 carries 3
    Graph g(40);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(4, 5);
    g.add_edge(6, 7);
    g.add_edge(20, 21);
    g.add_edge(22, 23);
    g.add_edge(24, 25);
    EquitablePartition pi;
    pi.t = 2;
    pi.assignment.assign(40, 0);
    for (int v = 20; v < 40; ++v) pi.assignment[static_cast<std::size_t>(v)] = 1;

    auto [sparse, dense] = dense_sparse_split(g, pi, {0, 1});
    CHECK(dense == std::vector<int>{0});  // 4 >= 400/100
    CHECK(sparse == std::vector<int>{1}); // 3 < 4

    Graph edgeless(40);
    auto [s2, d2] = dense_sparse_split(edgeless, pi, {0, 1});
    CHECK(d2.empty());
    CHECK(s2.size() == 2);
}

TEST_CASE("approximate candidate on an edgeless input puts everything on the J side") {
    Hypergraph h = Hypergraph::build(30, 3, {});
    RegBipConfig cfg;
    ApproxCandidate cand = approx_bipartition(h, std::vector<Vertex>{0}, cfg);
    CHECK(cand.partition.count(Side::X) == 30);
    CHECK(cand.partition.count(Side::Y) == 0);
    CHECK(cand.plus_dense_classes.empty());
}

TEST_CASE("approximate candidate tracks the planted side of J") {
    PartitionSpec spec;
    for (std::uint64_t seed : {3u, 14u}) {
        PlantedInstance inst = sample_planted(300, 3, sample_partition(300, spec, seed), seed);
        RegBipConfig cfg;
        ApproxCandidate cand = approx_bipartition(inst.hypergraph, std::vector<Vertex>{0}, cfg);
        CHECK(cand.partition.side(0) == Side::X);
        // distance to the planted side containing vertex 0
        Bipartition ref = inst.planted.side(0) == Side::X ? inst.planted : inst.planted.swapped();
        std::size_t diff = label_diff(cand.partition, ref);
        CHECK(static_cast<double>(diff) <= 5.0 * std::sqrt(cfg.epsilon) * 300.0); // stated bound
        CHECK(static_cast<double>(diff) <= 0.2 * 300.0); // what the pipeline actually delivers
        CHECK_FALSE(cand.degraded);
    }
}

TEST_CASE("degree-vote edit") {
    Bipartition split = oracle::front_half_split(6);
    Hypergraph kb = oracle::complete_crossing(6, 3, split);
    CHECK(edit_bipartition(kb, split) == split);

    // edgeless: every vote ties, everything lands on X
    Hypergraph edgeless = Hypergraph::build(6, 3, {});
    Bipartition all_x = edit_bipartition(edgeless, split);
    CHECK(all_x.count(Side::X) == 6);

    // the planted split is a fixed point on planted instances
    PartitionSpec spec;
    PlantedInstance inst = sample_planted(80, 3, sample_partition(80, spec, 9), 9);
    CHECK(edit_bipartition(inst.hypergraph, inst.planted) == inst.planted);
}

TEST_CASE("edit repairs a corrupted planted split exactly") {
    PartitionSpec spec;
    int gated = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        PlantedInstance inst = sample_planted(200, 3, sample_partition(200, spec, seed), seed);
        // spot-check the instance's typicality before asserting the repair
        if (!check_delta_typical(inst.hypergraph, inst.planted, 0.2, 60, seed).pass()) continue;
        ++gated;
        Bipartition corrupted = inst.planted;
        rng::Engine eng(rng::derive(seed, 999));
        // flip 5% of the vertices, distinct
        std::vector<Vertex> ids(200);
        std::iota(ids.begin(), ids.end(), 0);
        for (int i = 0; i < 10; ++i) {
            std::size_t pick =
                static_cast<std::size_t>(i) + static_cast<std::size_t>(eng.below(200 - i));
            std::swap(ids[static_cast<std::size_t>(i)], ids[pick]);
            corrupted.flip(ids[static_cast<std::size_t>(i)]);
        }
        Bipartition fixed = edit_bipartition(inst.hypergraph, corrupted);
        CHECK(fixed == inst.planted);
    }
    CHECK(gated >= 5); // the spot-check rarely rejects at this size
}

TEST_CASE("edit double application is stable once a fixed point is reached") {
    PartitionSpec spec;
    PlantedInstance inst = sample_planted(60, 3, sample_partition(60, spec, 31), 31);
    Bipartition q = edit_bipartition(inst.hypergraph, oracle::front_half_split(60));
    Bipartition r = edit_bipartition(inst.hypergraph, q);
    // whatever q is, a fixed point stays fixed
    Bipartition rr = edit_bipartition(inst.hypergraph, r);
    if (r == q) CHECK(rr == r);
    CHECK(edit_bipartition(inst.hypergraph, inst.planted) == inst.planted);
}

TEST_CASE("reg driver on planted instances takes the fast path") {
    PartitionSpec spec;
    PlantedInstance inst = sample_planted(300, 3, sample_partition(300, spec, 77), 77);
    SolveReport rep = solve_reg(inst.hypergraph);
    CHECK(rep.status == SolveStatus::Ok);
    CHECK(rep.path == SolvePath::Step3i);
    REQUIRE(rep.j_records.size() == 1); // k = 3: a single J
    CHECK(rep.j_records[0].j == std::vector<Vertex>{0});
    CHECK(rep.j_records[0].independent);
    REQUIRE(rep.partition.has_value());
    CHECK(equal_up_to_swap(*rep.partition, inst.planted));
}

TEST_CASE("reg driver falls back and reports honestly") {
    SolveReport rf = solve_reg(fano_plane());
    CHECK(rf.status == SolveStatus::NotBipartite); // n <= 2k routes to the fallback

    Bipartition split = oracle::front_half_split(6);
    Hypergraph kb = oracle::complete_crossing(6, 3, split);
    SolveReport rep = solve_reg(kb); // n = 6 = 2k: direct fallback
    CHECK(rep.status == SolveStatus::Ok);
    CHECK(rep.path == SolvePath::Step3ii);
    CHECK(rep.j_records.empty());
    REQUIRE(rep.partition.has_value());
    CHECK(is_bipartition(kb, *rep.partition));
}

TEST_CASE("4-uniform driver iterates all three index pairs") {
    PartitionSpec spec;
    PlantedInstance inst = sample_planted(26, 4, sample_partition(26, spec, 8), 8);
    SolveReport rep = solve_reg(inst.hypergraph);
    CHECK(rep.status == SolveStatus::Ok);
    if (!rep.j_records.empty()) {
        CHECK(rep.j_records.size() == 3); // C({0,1,2}, 2)
        CHECK(rep.j_records[0].j == std::vector<Vertex>{0, 1});
        CHECK(rep.j_records[1].j == std::vector<Vertex>{0, 2});
        CHECK(rep.j_records[2].j == std::vector<Vertex>{1, 2});
    }
    REQUIRE(rep.partition.has_value());
    CHECK(is_bipartition(inst.hypergraph, *rep.partition));
}

TEST_CASE("every approximate candidate is a total labeling with J on X") {
    PartitionSpec spec;
    for (std::uint64_t seed = 2; seed <= 4; ++seed) {
        PlantedInstance inst = sample_planted(64, 3, sample_partition(64, spec, seed), seed);
        RegBipConfig cfg;
        for (Vertex j = 0; j < 3; ++j) {
            ApproxCandidate cand = approx_bipartition(inst.hypergraph, std::vector<Vertex>{j}, cfg);
            CHECK(cand.partition.size() == 64);
            CHECK(cand.partition.side(j) == Side::X);
            CHECK(cand.partition.count(Side::X) + cand.partition.count(Side::Y) == 64);
        }
    }
}
