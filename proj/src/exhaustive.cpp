#include "khg/exhaustive.hpp"

#include "khg/elem_bip.hpp"

#include <algorithm>
#include <chrono>

namespace khg {

namespace {

// Shared DFS over label codes. Vertex 0 is X; vertices are assigned from
// n-1 down to 1 (most significant code bit first), trying Y before X so
// leaves appear in ascending code order. Edges are checked as soon as their
// last vertex is assigned. Returns true to stop the walk.
template <typename OnLeaf>
class CodeSearch {
public:
    CodeSearch(const Hypergraph& h, OnLeaf on_leaf) : h_(h), on_leaf_(on_leaf) {
        int n = h.n();
        labels_.assign(static_cast<std::size_t>(n), Side::X);
        // trigger vertex of an edge: its smallest member, except that edges
        // containing vertex 0 trigger on their second-smallest member
        triggers_.assign(static_cast<std::size_t>(n), {});
        for (std::size_t e = 0; e < h.m(); ++e) {
            auto row = h.edge(e);
            Vertex t = row[0] == 0 ? row[1] : row[0];
            triggers_[static_cast<std::size_t>(t)].push_back(static_cast<std::uint32_t>(e));
        }
    }

    void run() { walk(h_.n() - 1); }

private:
    bool edge_mono(std::uint32_t e) const {
        auto row = h_.edge(e);
        Side s = labels_[static_cast<std::size_t>(row[0])];
        for (Vertex w : row.subspan(1))
            if (labels_[static_cast<std::size_t>(w)] != s) return false;
        return true;
    }

    // assigns vertices cur, cur-1, ..., 1; returns true to stop
    bool walk(int cur) {
        if (cur == 0) {
            bool all_x = true;
            for (std::size_t v = 1; v < labels_.size(); ++v)
                if (labels_[v] != Side::X) {
                    all_x = false;
                    break;
                }
            if (all_x) return false; // Y side empty
            Bipartition p(labels_.size());
            for (std::size_t v = 0; v < labels_.size(); ++v)
                p.set(static_cast<Vertex>(v), labels_[v]);
            return on_leaf_(p);
        }
        for (Side s : {Side::Y, Side::X}) {
            labels_[static_cast<std::size_t>(cur)] = s;
            bool ok = true;
            for (auto e : triggers_[static_cast<std::size_t>(cur)])
                if (edge_mono(e)) {
                    ok = false;
                    break;
                }
            if (ok && walk(cur - 1)) return true;
        }
        return false;
    }

    const Hypergraph& h_;
    OnLeaf on_leaf_;
    std::vector<Side> labels_;
    std::vector<std::vector<std::uint32_t>> triggers_;
};

} // namespace

std::optional<Bipartition> exhaustive_bipartition(const Hypergraph& h, int n_cap) {
    if (h.n() > n_cap)
        throw CapExceededError("exhaustive 2-coloring capped at n=" + std::to_string(n_cap));
    std::optional<Bipartition> found;
    CodeSearch search(h, [&](const Bipartition& p) {
        found = p;
        return true;
    });
    search.run();
    return found;
}

std::vector<Bipartition> list_bipartitions(const Hypergraph& h, std::size_t limit, int n_cap) {
    if (h.n() > n_cap)
        throw CapExceededError("exhaustive 2-coloring capped at n=" + std::to_string(n_cap));
    std::vector<Bipartition> out;
    if (limit == 0) return out;
    CodeSearch search(h, [&](const Bipartition& p) {
        out.push_back(p);
        return out.size() >= limit;
    });
    search.run();
    return out;
}

namespace {

class ClassSearch {
public:
    ClassSearch(const Hypergraph& h, int r) : h_(h), r_(r) {
        int n = h.n();
        cls_.assign(static_cast<std::size_t>(n), -1);
        by_max_.assign(static_cast<std::size_t>(n), {});
        for (std::size_t e = 0; e < h.m(); ++e) {
            auto row = h.edge(e);
            by_max_[static_cast<std::size_t>(row[row.size() - 1])].push_back(
                static_cast<std::uint32_t>(e));
        }
    }

    bool solve(std::vector<int>& out) {
        if (!assign(0, 0)) return false;
        out = cls_;
        return true;
    }

private:
    bool assign(int v, int used) {
        if (v == h_.n()) return true;
        int limit = std::min(used + 1, r_);
        for (int c = 0; c < limit; ++c) {
            cls_[static_cast<std::size_t>(v)] = c;
            bool ok = true;
            for (auto e : by_max_[static_cast<std::size_t>(v)]) {
                auto row = h_.edge(e);
                bool mono = true;
                for (Vertex w : row)
                    if (cls_[static_cast<std::size_t>(w)] != c) {
                        mono = false;
                        break;
                    }
                if (mono) {
                    ok = false;
                    break;
                }
            }
            if (ok && assign(v + 1, std::max(used, c + 1))) return true;
        }
        cls_[static_cast<std::size_t>(v)] = -1;
        return false;
    }

    const Hypergraph& h_;
    int r_;
    std::vector<int> cls_;
    std::vector<std::vector<std::uint32_t>> by_max_;
};

} // namespace

ChromaticPartition smallest_partition(const Hypergraph& h, int r_cap, int n_cap) {
    if (h.n() > n_cap)
        throw CapExceededError("smallest-partition search capped at n=" + std::to_string(n_cap));
    if (r_cap < 1) throw ValidationError("class cap must be at least 1");
    for (int r = 1; r <= r_cap; ++r) {
        ClassSearch search(h, r);
        std::vector<int> assignment;
        if (search.solve(assignment)) {
            ChromaticPartition cp;
            cp.r = r;
            cp.assignment = std::move(assignment);
            cp.minimality_certified = true; // the r-1 search completed empty
            return cp;
        }
    }
    throw CapExceededError("no partition within " + std::to_string(r_cap) + " classes");
}

Hypergraph fano_plane() {
    // lines of the (7,3,1)-design, 0-based
    static const std::vector<std::vector<Vertex>> lines = {
        {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    return Hypergraph::build(7, 3, lines);
}

Hypergraph complete_hypergraph(int n, int k) {
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> cur;
    // lexicographic enumeration of k-subsets
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
        edges.emplace_back(c.begin(), c.end());
        int j = k - 1;
        while (j >= 0 && c[static_cast<std::size_t>(j)] == n - k + j) --j;
        if (j < 0) break;
        ++c[static_cast<std::size_t>(j)];
        for (int i = j + 1; i < k; ++i)
            c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i - 1)] + 1;
    }
    return Hypergraph::build(n, k, edges);
}

namespace {

const std::vector<std::vector<int>>& fano_lines_by_point() {
    // lines fully contained in the point prefix 0..p, checked as point p is placed
    static const std::vector<std::vector<int>> complete_at = [] {
        std::vector<std::vector<Vertex>> lines = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                                  {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
        std::vector<std::vector<int>> at(7);
        for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
            int mx = *std::max_element(lines[static_cast<std::size_t>(li)].begin(),
                                       lines[static_cast<std::size_t>(li)].end());
            at[static_cast<std::size_t>(mx)].push_back(li);
        }
        return at;
    }();
    return complete_at;
}

bool place_fano_point(const Hypergraph& h, std::vector<Vertex>& img, std::vector<bool>& used,
                      int p) {
    if (p == 7) return true;
    static const std::vector<std::vector<Vertex>> lines = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6},
                                                           {1, 3, 5}, {1, 4, 6}, {2, 3, 6},
                                                           {2, 4, 5}};
    for (Vertex v = 0; v < h.n(); ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        img[static_cast<std::size_t>(p)] = v;
        bool ok = true;
        for (int li : fano_lines_by_point()[static_cast<std::size_t>(p)]) {
            Vertex t[3];
            for (int i = 0; i < 3; ++i)
                t[i] = img[static_cast<std::size_t>(lines[static_cast<std::size_t>(li)]
                                                        [static_cast<std::size_t>(i)])];
            std::sort(t, t + 3);
            if (!h.contains_edge({t, 3})) {
                ok = false;
                break;
            }
        }
        if (ok) {
            used[static_cast<std::size_t>(v)] = true;
            if (place_fano_point(h, img, used, p + 1)) return true;
            used[static_cast<std::size_t>(v)] = false;
        }
    }
    return false;
}

} // namespace

bool contains_fano(const Hypergraph& h, int n_cap) {
    if (h.k() != 3) throw ValidationError("design scan requires a 3-uniform hypergraph");
    if (h.n() > n_cap)
        throw CapExceededError("design scan capped at n=" + std::to_string(n_cap));
    if (h.n() < 7 || h.m() < 7) return false;
    std::vector<Vertex> img(7, -1);
    std::vector<bool> used(static_cast<std::size_t>(h.n()), false);
    return place_fano_point(h, img, used, 0);
}

SolveReport solve_fano(const Hypergraph& h) {
    if (h.k() != 3) throw ValidationError("this solver handles 3-uniform inputs");
    SolveReport rep;
    rep.algo = "fano";
    rep.n = h.n();
    rep.k = h.k();
    rep.m = h.m();

    if (h.m() == 0) {
        // the whole vertex set is independent
        rep.path = SolvePath::Step3i;
        rep.fano_case = 2;
        ChromaticPartition cp;
        cp.r = 1;
        cp.assignment.assign(static_cast<std::size_t>(h.n()), 0);
        cp.minimality_certified = true;
        rep.chromatic = std::move(cp);
        return rep;
    }

    auto as_chromatic = [&](const Bipartition& p) {
        ChromaticPartition cp;
        cp.r = 2;
        cp.assignment.resize(static_cast<std::size_t>(h.n()));
        for (Vertex v = 0; v < h.n(); ++v)
            cp.assignment[static_cast<std::size_t>(v)] = p.side(v) == Side::X ? 0 : 1;
        cp.minimality_certified = true; // an edge exists, so one class cannot do
        return cp;
    };

    auto t0 = std::chrono::steady_clock::now();
    ElemTrace trace = elem_candidate(h);
    rep.stage1_ns = elapsed_ns(t0);

    auto t1 = std::chrono::steady_clock::now();
    bool candidate_ok = is_bipartition(h, trace.candidate);
    rep.stage2_ns = elapsed_ns(t1);

    if (candidate_ok) {
        rep.path = SolvePath::Step3i;
        rep.fano_case = 1;
        rep.partition = trace.candidate;
        rep.chromatic = as_chromatic(trace.candidate);
        return rep;
    }

    auto t2 = std::chrono::steady_clock::now();
    try {
        if (auto p = exhaustive_bipartition(h)) {
            rep.path = SolvePath::Step3ii;
            rep.fano_case = 2;
            rep.partition = *p;
            rep.chromatic = as_chromatic(*p);
        } else {
            rep.path = SolvePath::Step3iii;
            rep.fano_case = 3;
            rep.chromatic = smallest_partition(h, h.n());
        }
    } catch (const CapExceededError&) {
        rep.status = SolveStatus::CapExceeded;
    }
    rep.stage3_ns = elapsed_ns(t2);
    return rep;
}

} // namespace khg
