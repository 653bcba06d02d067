#include "khg/reg_bip.hpp"

#include "khg/exhaustive.hpp"

#include <algorithm>
#include <chrono>

namespace khg {

namespace {

// target class size for the link-graph partition; keeps classes inside the
// regime where the pair certificate separates structure from noise
constexpr int TARGET_CLASS_SIZE = 24;

std::uint64_t count_into(const Hypergraph& h, Vertex u, const BitSet& side) {
    std::uint64_t c = 0;
    for (auto e : h.incidence(u)) {
        bool inside = true;
        for (Vertex w : h.edge(e))
            if (w != u && !side.test(static_cast<std::size_t>(w))) {
                inside = false;
                break;
            }
        if (inside) ++c;
    }
    return c;
}

} // namespace

std::pair<std::vector<int>, std::vector<int>>
dense_sparse_split(const Graph& link_graph, const EquitablePartition& pi,
                   const std::vector<int>& plus) {
    auto classes = pi.class_sets(link_graph.n());
    std::vector<int> sparse, dense;
    for (int c : plus) {
        const auto& cs = classes[static_cast<std::size_t>(c)];
        std::uint64_t e = link_graph.edges_within(cs);
        std::uint64_t sz = cs.count();
        if (100 * e < sz * sz)
            sparse.push_back(c);
        else
            dense.push_back(c);
    }
    return {std::move(sparse), std::move(dense)};
}

ApproxCandidate approx_bipartition(const Hypergraph& h, std::span<const Vertex> j_set,
                                   const RegBipConfig& cfg) {
    if (static_cast<int>(j_set.size()) != h.k() - 2)
        throw ValidationError("link set must have k-2 vertices");

    ApproxCandidate cand;
    cand.j.assign(j_set.begin(), j_set.end());
    std::sort(cand.j.begin(), cand.j.end());

    Link lk = link(h, j_set);
    Graph g = Graph::from_two_uniform(lk.h);

    ApproxCandidate out = std::move(cand);
    out.link_to_parent = lk.to_parent;

    int link_n = g.n();
    RegConfig rc = cfg.reg;
    rc.epsilon = cfg.epsilon;
    rc.t0 = std::clamp(link_n / TARGET_CLASS_SIZE, 2, std::max(2, cfg.reg.t0));
    rc.t0 = std::max(1, std::min(rc.t0, link_n));
    rc.t_cap = std::max(rc.t_cap, rc.t0);

    RegularizeResult reg = regularize(g, rc);
    out.degraded = reg.degraded();
    out.t = reg.partition.t;
    out.regular_pairs = reg.cluster.regular_pairs.size();
    out.link_partition = reg.partition;
    out.link_cluster = reg.cluster;

    ClusterSplit split = cluster_degree_split(reg.cluster, cfg.epsilon);
    auto [sparse, dense] = dense_sparse_split(g, reg.partition, split.plus);
    out.minus_classes = split.minus;
    out.plus_sparse_classes = sparse;
    out.plus_dense_classes = dense;

    std::vector<bool> class_on_y(static_cast<std::size_t>(reg.partition.t), false);
    for (int c : dense) class_on_y[static_cast<std::size_t>(c)] = true;

    Bipartition p(static_cast<std::size_t>(h.n()), Side::X); // J and minus/sparse classes land on X
    for (Vertex lv = 0; lv < link_n; ++lv) {
        if (class_on_y[static_cast<std::size_t>(reg.partition.assignment[static_cast<std::size_t>(lv)])])
            p.set(lk.to_parent[static_cast<std::size_t>(lv)], Side::Y);
    }
    out.partition = std::move(p);
    return out;
}

Bipartition edit_bipartition(const Hypergraph& h, const Bipartition& cand) {
    if (cand.size() != static_cast<std::size_t>(h.n()))
        throw ValidationError("candidate length mismatch");
    BitSet x = cand.side_set(Side::X);
    BitSet y = cand.side_set(Side::Y);
    Bipartition out(static_cast<std::size_t>(h.n()));
    for (Vertex u = 0; u < h.n(); ++u) {
        // u never occurs in its own punctured edges, so membership of u in
        // the side set cannot affect the counts
        std::uint64_t dx = count_into(h, u, x);
        std::uint64_t dy = count_into(h, u, y);
        out.set(u, dx <= dy ? Side::X : Side::Y);
    }
    return out;
}

SolveReport solve_reg(const Hypergraph& h, const RegBipConfig& cfg) {
    if (h.k() < 3) throw ValidationError("this solver requires uniformity at least 3");
    SolveReport rep;
    rep.algo = "reg";
    rep.n = h.n();
    rep.k = h.k();
    rep.m = h.m();

    std::vector<Vertex> l_set;
    if (cfg.l_override) {
        l_set = *cfg.l_override;
        std::sort(l_set.begin(), l_set.end());
        for (Vertex v : l_set) h.check_vertex(v);
    } else {
        for (Vertex v = 0; v < 2 * h.k() - 5; ++v) l_set.push_back(v);
    }

    const int jsz = h.k() - 2;
    bool direct_fallback = h.n() <= 2 * h.k() || static_cast<int>(l_set.size()) < jsz ||
                           l_set.back() >= h.n();

    std::vector<Bipartition> edited;
    if (!direct_fallback) {
        std::vector<ApproxCandidate> approxes;
        auto t0 = std::chrono::steady_clock::now();
        // lexicographic (k-2)-subsets of l_set
        std::vector<int> pick(static_cast<std::size_t>(jsz));
        for (int i = 0; i < jsz; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<Vertex> j;
            j.reserve(static_cast<std::size_t>(jsz));
            for (int idx : pick) j.push_back(l_set[static_cast<std::size_t>(idx)]);
            approxes.push_back(approx_bipartition(h, j, cfg));
            int i = jsz - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                                 static_cast<int>(l_set.size()) - jsz + i)
                --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int x = i + 1; x < jsz; ++x)
                pick[static_cast<std::size_t>(x)] = pick[static_cast<std::size_t>(x - 1)] + 1;
        }
        rep.stage1_ns = elapsed_ns(t0);

        auto t1 = std::chrono::steady_clock::now();
        edited.reserve(approxes.size());
        for (const auto& a : approxes) edited.push_back(edit_bipartition(h, a.partition));
        rep.stage2_ns = elapsed_ns(t1);

        auto t2 = std::chrono::steady_clock::now();
        int hit = -1;
        for (std::size_t i = 0; i < edited.size(); ++i) {
            JRecord jr;
            jr.j = approxes[i].j;
            jr.t = approxes[i].t;
            jr.regular_pairs = approxes[i].regular_pairs;
            jr.x_approx_size = approxes[i].partition.count(Side::X);
            jr.degraded = approxes[i].degraded;
            jr.independent = is_bipartition(h, edited[i]);
            rep.j_records.push_back(std::move(jr));
            if (rep.j_records.back().independent && hit < 0) hit = static_cast<int>(i);
        }
        if (hit >= 0) {
            rep.path = SolvePath::Step3i;
            rep.partition = edited[static_cast<std::size_t>(hit)];
        }
        rep.stage3_ns = elapsed_ns(t2);

        // distance from each approximate candidate to the final output
        for (std::size_t i = 0; i < rep.j_records.size(); ++i) {
            const Bipartition& ref = rep.partition ? *rep.partition : edited[i];
            std::size_t d = label_diff(approxes[i].partition, ref);
            rep.j_records[i].sym_diff_to_output = std::min(d, approxes[i].partition.size() - d);
        }
        if (hit >= 0) return rep;
    }

    auto t3 = std::chrono::steady_clock::now();
    rep.path = SolvePath::Step3ii;
    try {
        if (auto p = exhaustive_bipartition(h))
            rep.partition = std::move(*p);
        else
            rep.status = SolveStatus::NotBipartite;
    } catch (const CapExceededError&) {
        rep.status = SolveStatus::CapExceeded;
    }
    rep.stage3_ns += elapsed_ns(t3);
    return rep;
}

} // namespace khg
