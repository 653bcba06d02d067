#pragma once

// Simple graph with bitset adjacency rows. Edge counting between vertex sets
// runs on the popcount kernels.

#include "khg/bitset.hpp"
#include "khg/errors.hpp"
#include "khg/hypergraph.hpp"

#include <cstdint>
#include <vector>

namespace khg {

class Graph {
public:
    Graph() : n_(0) {}
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), BitSet(static_cast<std::size_t>(n))) {}

    static Graph from_two_uniform(const Hypergraph& h) {
        if (h.k() != 2) throw ValidationError("expected a 2-uniform hypergraph");
        Graph g(h.n());
        for (std::size_t e = 0; e < h.m(); ++e) {
            auto row = h.edge(e);
            g.add_edge(row[0], row[1]);
        }
        return g;
    }

    int n() const { return n_; }

    void add_edge(Vertex u, Vertex v) {
        if (u == v) throw ValidationError("self loop");
        adj_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
        adj_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
    }

    bool has_edge(Vertex u, Vertex v) const {
        return adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
    }

    const BitSet& row(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }

    std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].count(); }

    std::uint64_t degree_into(Vertex v, const BitSet& s) const {
        return adj_[static_cast<std::size_t>(v)].count_and(s);
    }

    // Edges with one end in a and the other in b; a and b must be disjoint.
    std::uint64_t edges_between(const BitSet& a, const BitSet& b) const {
        std::uint64_t c = 0;
        a.for_each([&](std::size_t v) { c += adj_[v].count_and(b); });
        return c;
    }

    // Edges with both ends inside s.
    std::uint64_t edges_within(const BitSet& s) const {
        std::uint64_t twice = 0;
        s.for_each([&](std::size_t v) { twice += adj_[v].count_and(s); });
        return twice / 2;
    }

private:
    int n_;
    std::vector<BitSet> adj_;
};

} // namespace khg
