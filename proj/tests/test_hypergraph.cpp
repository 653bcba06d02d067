#include "khg/hypergraph.hpp"

#include "khg/exhaustive.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace khg;

TEST_CASE("build canonicalizes and validates") {
    // permuted duplicates collapse to one edge
    Hypergraph h = Hypergraph::build(4, 3, {{0, 1, 2}, {2, 1, 0}});
    CHECK(h.m() == 1);
    CHECK(h.edge(0)[0] == 0);
    CHECK(h.edge(0)[2] == 2);
    CHECK(h.contains_edge(std::vector<Vertex>{0, 1, 2}));
    CHECK_FALSE(h.contains_edge(std::vector<Vertex>{0, 1, 3}));

    CHECK_THROWS_AS(Hypergraph::build(3, 3, {{0, 1, 3}}), ValidationError); // out of range
    CHECK_THROWS_AS(Hypergraph::build(4, 3, {{0, 1}}), ValidationError);    // wrong arity
    CHECK_THROWS_AS(Hypergraph::build(4, 1, {}), ValidationError);          // k < 2
    CHECK_THROWS_AS(Hypergraph::build(4, 3, {{0, 1, 1}}), ValidationError); // repeated vertex
    CHECK_THROWS_AS(Hypergraph::build(2, 3, {}), ValidationError);          // n < k
}

TEST_CASE("the design instance has 7 edges and every point on 3 lines") {
    Hypergraph f = fano_plane();
    CHECK(f.n() == 7);
    CHECK(f.m() == 7);
    for (Vertex v = 0; v < 7; ++v) CHECK(f.degree(v) == 3);
    // every pair of points lies on exactly one line
    for (Vertex u = 0; u < 7; ++u)
        for (Vertex v = u + 1; v < 7; ++v) {
            int lines = 0;
            for (std::size_t e = 0; e < f.m(); ++e) {
                auto row = f.edge(e);
                bool has_u = false, has_v = false;
                for (Vertex w : row) {
                    has_u |= w == u;
                    has_v |= w == v;
                }
                lines += has_u && has_v;
            }
            CHECK(lines == 1);
        }
}

TEST_CASE("neighborhood") {
    Hypergraph edgeless = Hypergraph::build(5, 3, {});
    CHECK(neighborhood(edgeless, 2).empty());

    Hypergraph f = fano_plane();
    auto nb = neighborhood(f, 0);
    std::set<std::vector<Vertex>> got(nb.begin(), nb.end());
    std::set<std::vector<Vertex>> want = {{1, 2}, {3, 4}, {5, 6}};
    CHECK(got == want);

    Hypergraph single = Hypergraph::build(3, 3, {{0, 1, 2}});
    auto nb1 = neighborhood(single, 1);
    REQUIRE(nb1.size() == 1);
    CHECK(nb1[0] == std::vector<Vertex>{0, 2});

    CHECK_THROWS_AS(neighborhood(f, 9), ValidationError);
}

TEST_CASE("joint degree hand cases") {
    Hypergraph edgeless = Hypergraph::build(6, 3, {});
    CHECK(joint_degree(edgeless, 0, 1) == 0);

    Bipartition split = oracle::front_half_split(6);
    Hypergraph kb = oracle::complete_crossing(6, 3, split);
    CHECK(kb.m() == 18);
    CHECK(joint_degree(kb, 0, 1) == 6);
    CHECK(joint_degree(kb, 2, 3) == 4);
    CHECK(joint_degree(kb, 3, 2) == 4);
    CHECK_THROWS_AS(joint_degree(kb, 2, 2), ValidationError);
}

TEST_CASE("joint degree equals the definitional intersection on random instances") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        int n = 6 + static_cast<int>(seed % 5);
        Hypergraph h = oracle::random_hypergraph(n, 3, 0.4, seed);
        for (Vertex u = 0; u < h.n(); ++u)
            for (Vertex v = u + 1; v < h.n(); ++v) {
                CAPTURE(seed);
                CHECK(joint_degree(h, u, v) == oracle::brute_joint_degree(h, u, v));
            }
    }
    // one 4-uniform case
    Hypergraph h4 = oracle::random_hypergraph(9, 4, 0.3, 99);
    for (Vertex u = 0; u < 9; ++u)
        for (Vertex v = u + 1; v < 9; ++v)
            CHECK(joint_degree(h4, u, v) == oracle::brute_joint_degree(h4, u, v));
}

TEST_CASE("link hypergraphs") {
    Hypergraph h = Hypergraph::build(4, 3, {{0, 1, 2}, {0, 1, 3}});
    Link lk = link(h, std::vector<Vertex>{0});
    CHECK(lk.h.n() == 3);
    CHECK(lk.h.k() == 2);
    CHECK(lk.h.m() == 2);
    // vertices 1,2,3 relabel to 0,1,2
    CHECK(lk.to_parent == std::vector<Vertex>{1, 2, 3});
    CHECK(lk.from_parent[0] == -1);
    CHECK(lk.h.contains_edge(std::vector<Vertex>{0, 1})); // {1,2}
    CHECK(lk.h.contains_edge(std::vector<Vertex>{0, 2})); // {1,3}

    Hypergraph edgeless = Hypergraph::build(6, 3, {});
    CHECK(link(edgeless, std::vector<Vertex>{3}).h.m() == 0);

    CHECK_THROWS_AS(link(h, std::vector<Vertex>{0, 1}), ValidationError); // |J| not in {1, k-2}
    CHECK_THROWS_AS(link(h, std::vector<Vertex>{7}), ValidationError);

    // 4-uniform: |J| = k-2 = 2 gives a graph; edge count matches the number
    // of edges containing J
    for (std::uint64_t seed = 3; seed <= 5; ++seed) {
        Hypergraph h4 = oracle::random_hypergraph(9, 4, 0.35, seed);
        for (Vertex a = 0; a < 4; ++a)
            for (Vertex b = a + 1; b < 5; ++b) {
                Link l2 = link(h4, std::vector<Vertex>{a, b});
                CHECK(l2.h.k() == 2);
                std::size_t direct = 0;
                for (std::size_t e = 0; e < h4.m(); ++e) {
                    auto row = h4.edge(e);
                    bool has_a = false, has_b = false;
                    for (Vertex w : row) {
                        has_a |= w == a;
                        has_b |= w == b;
                    }
                    if (has_a && has_b) ++direct;
                }
                CHECK(l2.h.m() == direct);
            }
    }
}

TEST_CASE("degree into a vertex set") {
    Bipartition split = oracle::front_half_split(6);
    Hypergraph kb = oracle::complete_crossing(6, 3, split);
    CHECK(degree_into(kb, 0, BitSet::of(6, {3, 4, 5})) == 3);
    CHECK(degree_into(kb, 0, BitSet::of(6, {1, 2})) == 0);
    Hypergraph edgeless = Hypergraph::build(6, 3, {});
    CHECK(degree_into(edgeless, 0, BitSet::of(6, {1, 2, 3})) == 0);
    CHECK_THROWS_AS(degree_into(kb, 3, BitSet::of(6, {3, 4, 5})), ValidationError);

    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Hypergraph h = oracle::random_hypergraph(10 + static_cast<int>(seed % 3), 3, 0.4, seed);
        rng::Engine eng(seed);
        for (int trial = 0; trial < 12; ++trial) {
            BitSet u(static_cast<std::size_t>(h.n()));
            for (Vertex w = 0; w < h.n(); ++w)
                if (eng.next() & 1) u.set(static_cast<std::size_t>(w));
            Vertex v = static_cast<Vertex>(eng.below(static_cast<std::uint64_t>(h.n())));
            u.reset(static_cast<std::size_t>(v));
            CHECK(degree_into(h, v, u) == oracle::brute_degree_into(h, v, u));
        }
    }
}

TEST_CASE("independence") {
    Hypergraph f = fano_plane();
    CHECK(is_independent(f, BitSet(7)));                    // empty set
    CHECK_FALSE(is_independent(f, BitSet::of(7, {0, 1, 2}))); // a line
    Bipartition split = oracle::front_half_split(6);
    Hypergraph kb = oracle::complete_crossing(6, 3, split);
    CHECK(is_independent(kb, BitSet::of(6, {0, 1, 2})));
}

TEST_CASE("bipartition validity") {
    Bipartition split = oracle::front_half_split(6);
    Hypergraph kb = oracle::complete_crossing(6, 3, split);
    CHECK(is_bipartition(kb, split));

    // the design admits no 2-coloring: all 2^6 assignments with vertex 0 on X
    Hypergraph f = fano_plane();
    for (unsigned code = 0; code < 64; ++code) {
        Bipartition p(7, Side::X);
        for (int b = 0; b < 6; ++b)
            if (code & (1u << b)) p.set(b + 1, Side::Y);
        CHECK_FALSE(is_bipartition(f, p));
    }

    Hypergraph edgeless = Hypergraph::build(4, 3, {});
    Bipartition alt(4);
    alt.set(1, Side::Y);
    alt.set(3, Side::Y);
    CHECK(is_bipartition(edgeless, alt));
    CHECK_FALSE(is_bipartition(edgeless, Bipartition(4, Side::X))); // empty side

    // equivalence with per-side independence plus nonemptiness, exhaustively
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        int n = 6 + static_cast<int>(seed % 3);
        Hypergraph h = oracle::random_hypergraph(n, 3, 0.35, 100 + seed);
        for (unsigned code = 0; code < (1u << n); ++code) {
            Bipartition p(static_cast<std::size_t>(n), Side::X);
            for (int b = 0; b < n; ++b)
                if (code & (1u << b)) p.set(b, Side::Y);
            BitSet xs = p.side_set(Side::X), ys = p.side_set(Side::Y);
            bool expect = xs.any() && ys.any() && is_independent(h, xs) && is_independent(h, ys);
            CHECK(is_bipartition(h, p) == expect);
        }
    }
}
