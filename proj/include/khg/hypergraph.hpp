#pragma once

// k-uniform hypergraph over vertices 0..n-1 with a per-vertex incidence
// index. Immutable after construction; all operations are pure.

#include "khg/bitset.hpp"
#include "khg/errors.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace khg {

using Vertex = std::int32_t;

enum class Side : std::uint8_t { X = 0, Y = 1 };

inline Side other(Side s) { return s == Side::X ? Side::Y : Side::X; }

// Two-label assignment of the vertices. Whether it actually 2-colors a given
// hypergraph is a separate question (is_bipartition).
class Bipartition {
public:
    Bipartition() = default;
    explicit Bipartition(std::size_t n, Side fill = Side::X)
        : labels_(n, static_cast<std::uint8_t>(fill)) {}

    static Bipartition from_x_set(std::size_t n, const BitSet& x) {
        Bipartition p(n, Side::Y);
        x.for_each([&](std::size_t v) { p.set(static_cast<Vertex>(v), Side::X); });
        return p;
    }

    std::size_t size() const { return labels_.size(); }
    Side side(Vertex v) const { return static_cast<Side>(labels_[static_cast<std::size_t>(v)]); }
    void set(Vertex v, Side s) { labels_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(s); }
    void flip(Vertex v) { labels_[static_cast<std::size_t>(v)] ^= 1; }

    BitSet side_set(Side s) const {
        BitSet b(labels_.size());
        for (std::size_t v = 0; v < labels_.size(); ++v)
            if (labels_[v] == static_cast<std::uint8_t>(s)) b.set(v);
        return b;
    }

    std::size_t count(Side s) const {
        std::size_t c = 0;
        for (auto l : labels_)
            if (l == static_cast<std::uint8_t>(s)) ++c;
        return c;
    }

    Bipartition swapped() const {
        Bipartition p = *this;
        for (auto& l : p.labels_) l ^= 1;
        return p;
    }

    bool operator==(const Bipartition& o) const { return labels_ == o.labels_; }

private:
    std::vector<std::uint8_t> labels_;
};

inline bool equal_up_to_swap(const Bipartition& a, const Bipartition& b) {
    return a == b || a == b.swapped();
}

// Number of vertices whose a-label differs from their b-label; with the
// swapped variant this measures |X_a triangle X_b| under the best alignment.
inline std::size_t label_diff(const Bipartition& a, const Bipartition& b) {
    std::size_t d = 0;
    for (std::size_t v = 0; v < a.size(); ++v)
        if (a.side(static_cast<Vertex>(v)) != b.side(static_cast<Vertex>(v))) ++d;
    return d;
}

class Hypergraph {
public:
    // Validates, canonicalizes (sorts each tuple, sorts edge list, dedups) and
    // builds the incidence index.
    static Hypergraph build(int n, int k, const std::vector<std::vector<Vertex>>& raw_edges);

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t m() const { return flat_.size() / static_cast<std::size_t>(k_); }

    std::span<const Vertex> edge(std::size_t e) const {
        return {flat_.data() + e * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
    }

    std::span<const std::uint32_t> incidence(Vertex v) const {
        check_vertex(v);
        return inc_[static_cast<std::size_t>(v)];
    }

    std::size_t degree(Vertex v) const { return incidence(v).size(); }

    // Membership of a sorted k-tuple, by binary search over the canonical
    // edge order.
    bool contains_edge(std::span<const Vertex> sorted_tuple) const;

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw ValidationError("vertex out of range");
    }

private:
    Hypergraph(int n, int k) : n_(n), k_(k) {}
    int n_, k_;
    std::vector<Vertex> flat_;                     // m rows of k sorted vertices, rows lex-sorted
    std::vector<std::vector<std::uint32_t>> inc_;  // vertex -> edge ids
};

// All (k-1)-sets J with J + {u} an edge, lexicographically sorted.
std::vector<std::vector<Vertex>> neighborhood(const Hypergraph& h, Vertex u);

// |N(u) ∩ N(v)| counted over (k-1)-sets; symmetric; u != v required.
std::uint64_t joint_degree(const Hypergraph& h, Vertex u, Vertex v);

// Link hypergraph of a j-set J, j in {1, k-2}: edges are I with I + J an edge
// of h, over the vertex set without J. Vertices are relabeled 0..n-|J|-1;
// the maps record the correspondence.
struct Link {
    Hypergraph h;
    std::vector<Vertex> to_parent;   // link vertex -> original vertex
    std::vector<Vertex> from_parent; // original vertex -> link vertex, -1 for J members
};
Link link(const Hypergraph& h, std::span<const Vertex> j_set);

// Number of (k-1)-sets J inside U with J + {v} an edge; v must not be in U.
std::uint64_t degree_into(const Hypergraph& h, Vertex v, const BitSet& u_set);

// True iff no edge lies entirely inside s.
bool is_independent(const Hypergraph& h, const BitSet& s);

// True iff both sides are independent and nonempty.
bool is_bipartition(const Hypergraph& h, const Bipartition& p);

} // namespace khg
