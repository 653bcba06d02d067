#include "khg/random.hpp"

#include "khg/combinatorics.hpp"
#include "khg/exhaustive.hpp"
#include "khg/io.hpp"
#include "khg/verifiers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace khg;

TEST_CASE("planted sampling is deterministic and respects the sides") {
    PartitionSpec spec;
    Bipartition part = sample_partition(20, spec, 42);
    PlantedInstance a = sample_planted(20, 3, part, 42);
    PlantedInstance b = sample_planted(20, 3, part, 42);
    std::ostringstream sa, sb;
    write_khg(sa, a.hypergraph);
    write_khg(sb, b.hypergraph);
    CHECK(sa.str() == sb.str());
    CHECK(a.planted == b.planted);

    PlantedInstance c = sample_planted(20, 3, part, 43);
    std::ostringstream sc;
    write_khg(sc, c.hypergraph);
    CHECK(sa.str() != sc.str());

    // no edge inside either side, on several samples
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        PlantedInstance inst = sample_planted(16, 3, sample_partition(16, spec, seed), seed);
        CHECK(is_independent(inst.hypergraph, inst.planted.side_set(Side::X)));
        CHECK(is_independent(inst.hypergraph, inst.planted.side_set(Side::Y)));
        CHECK(is_bipartition(inst.hypergraph, inst.planted));
    }

    CHECK_THROWS_AS(sample_planted(6, 3, Bipartition(6, Side::X), 1), ValidationError);
}

TEST_CASE("single candidate edge when n = k") {
    // the only k-set is the whole vertex set; it crosses any nonempty split
    int with_edge = 0;
    Bipartition split = oracle::front_half_split(3);
    for (std::uint64_t seed = 0; seed < 400; ++seed)
        with_edge += static_cast<int>(sample_planted(3, 3, split, seed).hypergraph.m());
    CHECK(with_edge > 140);
    CHECK(with_edge < 260); // roughly half of 400
}

TEST_CASE("crossing k-sets appear with frequency 1/2") {
    // n = 45 balanced gives 10879 crossing candidates
    PartitionSpec spec;
    Bipartition part = sample_partition(45, spec, 7);
    std::uint64_t crossing = 0;
    for_each_subset(45, 3, [&](std::span<const int> t) {
        Side s0 = part.side(t[0]);
        for (int v : t.subspan(1))
            if (part.side(v) != s0) {
                ++crossing;
                return;
            }
    });
    CHECK(crossing >= 10000);
    PlantedInstance inst = sample_planted(45, 3, part, 7);
    double freq = static_cast<double>(inst.hypergraph.m()) / static_cast<double>(crossing);
    CHECK(freq > 0.48);
    CHECK(freq < 0.52);
}

TEST_CASE("expected edge count at n=6 is 9") {
    Bipartition split = oracle::front_half_split(6);
    double total = 0;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s)
        total += static_cast<double>(sample_planted(6, 3, split, static_cast<std::uint64_t>(s))
                                         .hypergraph.m());
    double mean = total / seeds;
    CHECK(mean > 9.0 * 0.97);
    CHECK(mean < 9.0 * 1.03);
}

TEST_CASE("partition modes") {
    PartitionSpec balanced;
    Bipartition p = sample_partition(10, balanced, 3);
    CHECK(p.count(Side::X) == 5);
    CHECK(p.count(Side::Y) == 5);

    PartitionSpec gamma = PartitionSpec::parse("gamma-equitable", 0.1);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Bipartition q = sample_partition(100, gamma, seed);
        auto nx = q.count(Side::X);
        auto lo = std::min(nx, 100 - nx), hi = std::max(nx, 100 - nx);
        CHECK(lo >= 45);
        CHECK(hi <= 55);
        CHECK(check_gamma_equitable(q, 0.1));
    }

    PartitionSpec binom = PartitionSpec::parse("binomial", 0);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Bipartition q = sample_partition(2, binom, seed);
        CHECK(q.count(Side::X) == 1);
        CHECK(q.count(Side::Y) == 1);
    }

    CHECK_THROWS_AS(PartitionSpec::parse("bogus", 0), ValidationError);
    CHECK_THROWS_AS(sample_partition(10, PartitionSpec::parse("gamma-equitable", 1.5), 1),
                    ValidationError);
}

TEST_CASE("near-uniform sampling reproduces and keeps the planted witness valid") {
    PartitionSpec spec = PartitionSpec::parse("binomial", 0);
    PlantedInstance a = sample_near_uniform(18, 3, spec, 11);
    PlantedInstance b = sample_near_uniform(18, 3, spec, 11);
    std::ostringstream sa, sb;
    write_khg(sa, a.hypergraph);
    write_khg(sb, b.hypergraph);
    CHECK(sa.str() == sb.str());
    CHECK(a.planted == b.planted);
    CHECK(a.model == Model::NearUniform);
    CHECK(is_bipartition(a.hypergraph, a.planted));
}

TEST_CASE("near-uniform samples almost always have a unique 2-coloring") {
    PartitionSpec spec = PartitionSpec::parse("binomial", 0);
    int unique = 0;
    const int samples = 60;
    for (std::uint64_t seed = 1; seed <= samples; ++seed) {
        PlantedInstance inst = sample_near_uniform(14, 3, spec, seed);
        unique += list_bipartitions(inst.hypergraph, 2).size() == 1;
    }
    CHECK(unique >= static_cast<int>(0.95 * samples));
}

TEST_CASE("balanced 4-vertex instances never place an edge inside a side") {
    PartitionSpec spec;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        PlantedInstance inst = sample_planted(4, 3, sample_partition(4, spec, seed), seed);
        CHECK(is_independent(inst.hypergraph, inst.planted.side_set(Side::X)));
        CHECK(is_independent(inst.hypergraph, inst.planted.side_set(Side::Y)));
    }
}
