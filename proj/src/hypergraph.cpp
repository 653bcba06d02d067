#include "khg/hypergraph.hpp"

#include <algorithm>
#include <set>

namespace khg {

namespace {

bool row_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

Hypergraph Hypergraph::build(int n, int k, const std::vector<std::vector<Vertex>>& raw_edges) {
    if (k < 2) throw ValidationError("uniformity k must be at least 2");
    if (n < k) throw ValidationError("vertex count must be at least k");

    std::vector<std::vector<Vertex>> rows;
    rows.reserve(raw_edges.size());
    for (const auto& e : raw_edges) {
        if (static_cast<int>(e.size()) != k) throw ValidationError("edge with wrong arity");
        std::vector<Vertex> row(e);
        std::sort(row.begin(), row.end());
        for (int i = 0; i < k; ++i) {
            if (row[static_cast<std::size_t>(i)] < 0 || row[static_cast<std::size_t>(i)] >= n)
                throw ValidationError("vertex out of range");
            if (i > 0 && row[static_cast<std::size_t>(i)] == row[static_cast<std::size_t>(i - 1)])
                throw ValidationError("edge with repeated vertex");
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    Hypergraph h(n, k);
    h.flat_.reserve(rows.size() * static_cast<std::size_t>(k));
    for (const auto& row : rows) h.flat_.insert(h.flat_.end(), row.begin(), row.end());
    h.inc_.resize(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < rows.size(); ++e)
        for (Vertex v : rows[e]) h.inc_[static_cast<std::size_t>(v)].push_back(static_cast<std::uint32_t>(e));
    return h;
}

bool Hypergraph::contains_edge(std::span<const Vertex> t) const {
    if (static_cast<int>(t.size()) != k_) return false;
    std::size_t lo = 0, hi = m();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (row_less(edge(mid), t))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < m() && std::equal(t.begin(), t.end(), edge(lo).begin());
}

std::vector<std::vector<Vertex>> neighborhood(const Hypergraph& h, Vertex u) {
    h.check_vertex(u);
    std::vector<std::vector<Vertex>> out;
    out.reserve(h.degree(u));
    for (auto e : h.incidence(u)) {
        std::vector<Vertex> j;
        j.reserve(static_cast<std::size_t>(h.k()) - 1);
        for (Vertex w : h.edge(e))
            if (w != u) j.push_back(w);
        out.push_back(std::move(j));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t joint_degree(const Hypergraph& h, Vertex u, Vertex v) {
    if (u == v) throw ValidationError("joint degree needs two distinct vertices");
    h.check_vertex(u);
    h.check_vertex(v);
    // Sorted-merge intersection of the two neighborhood tuple lists.
    auto nu = neighborhood(h, u);
    auto nv = neighborhood(h, v);
    std::uint64_t c = 0;
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
        if (nu[i] < nv[j])
            ++i;
        else if (nv[j] < nu[i])
            ++j;
        else {
            ++c;
            ++i;
            ++j;
        }
    }
    return c;
}

Link link(const Hypergraph& h, std::span<const Vertex> j_set) {
    int j = static_cast<int>(j_set.size());
    if (j != 1 && j != h.k() - 2) throw ValidationError("link set size must be 1 or k-2");
    std::vector<Vertex> js(j_set.begin(), j_set.end());
    std::sort(js.begin(), js.end());
    for (int i = 0; i < j; ++i) {
        h.check_vertex(js[static_cast<std::size_t>(i)]);
        if (i > 0 && js[static_cast<std::size_t>(i)] == js[static_cast<std::size_t>(i - 1)])
            throw ValidationError("link set with repeated vertex");
    }

    std::vector<Vertex> to_parent;
    std::vector<Vertex> from_parent(static_cast<std::size_t>(h.n()), -1);
    for (Vertex v = 0; v < h.n(); ++v) {
        if (std::binary_search(js.begin(), js.end(), v)) continue;
        from_parent[static_cast<std::size_t>(v)] = static_cast<Vertex>(to_parent.size());
        to_parent.push_back(v);
    }

    // Scan the incidence list of the lowest-degree member of J.
    Vertex probe = js[0];
    for (Vertex w : js)
        if (h.degree(w) < h.degree(probe)) probe = w;

    std::vector<std::vector<Vertex>> link_edges;
    for (auto e : h.incidence(probe)) {
        auto row = h.edge(e);
        bool covers = true;
        for (Vertex w : js)
            if (!std::binary_search(row.begin(), row.end(), w)) {
                covers = false;
                break;
            }
        if (!covers) continue;
        std::vector<Vertex> rest;
        rest.reserve(row.size() - js.size());
        for (Vertex w : row)
            if (!std::binary_search(js.begin(), js.end(), w))
                rest.push_back(from_parent[static_cast<std::size_t>(w)]);
        link_edges.push_back(std::move(rest));
    }

    int link_n = h.n() - j;
    int link_k = h.k() - j;
    return Link{Hypergraph::build(link_n, link_k, link_edges), std::move(to_parent),
                std::move(from_parent)};
}

std::uint64_t degree_into(const Hypergraph& h, Vertex v, const BitSet& u_set) {
    h.check_vertex(v);
    if (u_set.size() != static_cast<std::size_t>(h.n()))
        throw ValidationError("vertex set universe mismatch");
    if (u_set.test(static_cast<std::size_t>(v))) throw ValidationError("vertex must not belong to the target set");
    std::uint64_t c = 0;
    for (auto e : h.incidence(v)) {
        bool inside = true;
        for (Vertex w : h.edge(e))
            if (w != v && !u_set.test(static_cast<std::size_t>(w))) {
                inside = false;
                break;
            }
        if (inside) ++c;
    }
    return c;
}

bool is_independent(const Hypergraph& h, const BitSet& s) {
    if (s.size() != static_cast<std::size_t>(h.n()))
        throw ValidationError("vertex set universe mismatch");
    for (std::size_t e = 0; e < h.m(); ++e) {
        bool inside = true;
        for (Vertex w : h.edge(e))
            if (!s.test(static_cast<std::size_t>(w))) {
                inside = false;
                break;
            }
        if (inside) return false;
    }
    return true;
}

bool is_bipartition(const Hypergraph& h, const Bipartition& p) {
    if (p.size() != static_cast<std::size_t>(h.n()))
        throw ValidationError("bipartition length mismatch");
    std::size_t nx = p.count(Side::X);
    if (nx == 0 || nx == p.size()) return false;
    for (std::size_t e = 0; e < h.m(); ++e) {
        auto row = h.edge(e);
        Side s0 = p.side(row[0]);
        bool mono = true;
        for (Vertex w : row.subspan(1))
            if (p.side(w) != s0) {
                mono = false;
                break;
            }
        if (mono) return false;
    }
    return true;
}

} // namespace khg
