#include "khg/elem_bip.hpp"

#include "khg/combinatorics.hpp"
#include "khg/exhaustive.hpp"

#include <chrono>

namespace khg {

namespace {

// Largest neighborhood-bitset universe we will allocate (bits).
constexpr std::uint64_t BITSET_BUDGET = std::uint64_t{1} << 25;

Rational threshold_value(int n, int k) {
    std::uint64_t c = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k - 1));
    std::uint64_t scale = (std::uint64_t{1} << k) - 3;
    if (c > (std::uint64_t{1} << 62) / scale)
        throw ValidationError("threshold numerator overflow");
    // (1/4) C(n,k-1) (1 - 3/2^k) = C(n,k-1) (2^k - 3) / 2^(k+2)
    return Rational(static_cast<std::int64_t>(c * scale), std::int64_t{1} << (k + 2));
}

// Colex ranks of the punctured edges around v, sorted.
std::vector<std::uint64_t> neighborhood_ranks(const Hypergraph& h, Vertex v,
                                              const BinomialTable& tab) {
    std::vector<std::uint64_t> ranks;
    ranks.reserve(h.degree(v));
    std::vector<int> j(static_cast<std::size_t>(h.k()) - 1);
    for (auto e : h.incidence(v)) {
        std::size_t idx = 0;
        for (Vertex w : h.edge(e))
            if (w != v) j[idx++] = w;
        ranks.push_back(colex_rank(j, tab));
    }
    std::sort(ranks.begin(), ranks.end());
    return ranks;
}

void neighborhood_bits(const Hypergraph& h, Vertex v, const BinomialTable& tab, BitSet& out) {
    out.clear();
    std::vector<int> j(static_cast<std::size_t>(h.k()) - 1);
    for (auto e : h.incidence(v)) {
        std::size_t idx = 0;
        for (Vertex w : h.edge(e))
            if (w != v) j[idx++] = w;
        out.set(colex_rank(j, tab));
    }
}

} // namespace

Rational elem_threshold(int n, int k) {
    if (k < 3) throw ValidationError("uniformity must be at least 3");
    if (n <= k) throw ValidationError("threshold requires n > k");
    return threshold_value(n, k);
}

std::vector<std::uint64_t> consecutive_joint_degrees(const Hypergraph& h) {
    int n = h.n();
    BinomialTable tab(static_cast<std::size_t>(n), static_cast<std::size_t>(h.k() - 1));
    std::uint64_t universe =
        binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(h.k() - 1));
    std::vector<std::uint64_t> degs(static_cast<std::size_t>(n - 1));

    if (universe <= BITSET_BUDGET) {
        BitSet cur(universe), next(universe);
        neighborhood_bits(h, 0, tab, cur);
        for (Vertex i = 0; i + 1 < n; ++i) {
            neighborhood_bits(h, i + 1, tab, next);
            degs[static_cast<std::size_t>(i)] = cur.count_and(next);
            std::swap(cur, next);
        }
        return degs;
    }

    std::vector<std::uint64_t> cur = neighborhood_ranks(h, 0, tab);
    for (Vertex i = 0; i + 1 < n; ++i) {
        auto next = neighborhood_ranks(h, i + 1, tab);
        std::uint64_t c = 0;
        std::size_t a = 0, b = 0;
        while (a < cur.size() && b < next.size()) {
            if (cur[a] < next[b])
                ++a;
            else if (next[b] < cur[a])
                ++b;
            else {
                ++c;
                ++a;
                ++b;
            }
        }
        degs[static_cast<std::size_t>(i)] = c;
        cur = std::move(next);
    }
    return degs;
}

ElemTrace elem_candidate(const Hypergraph& h, Side start) {
    if (h.k() < 3) throw ValidationError("this solver requires uniformity at least 3");
    ElemTrace trace;
    trace.threshold = threshold_value(h.n(), h.k());
    trace.degrees = consecutive_joint_degrees(h);
    trace.candidate = Bipartition(static_cast<std::size_t>(h.n()));
    trace.candidate.set(0, start);
    for (Vertex i = 0; i + 1 < h.n(); ++i) {
        bool same =
            static_cast<std::int64_t>(trace.degrees[static_cast<std::size_t>(i)]) >= trace.threshold;
        Side prev = trace.candidate.side(i);
        trace.candidate.set(i + 1, same ? prev : other(prev));
    }
    return trace;
}

SolveReport solve_elem(const Hypergraph& h) {
    if (h.k() < 3) throw ValidationError("this solver requires uniformity at least 3");
    SolveReport rep;
    rep.algo = "elem";
    rep.n = h.n();
    rep.k = h.k();
    rep.m = h.m();

    auto t0 = std::chrono::steady_clock::now();
    auto degrees = consecutive_joint_degrees(h);
    rep.stage1_ns = elapsed_ns(t0);

    auto t1 = std::chrono::steady_clock::now();
    Rational threshold = threshold_value(h.n(), h.k());
    Bipartition candidate(static_cast<std::size_t>(h.n()));
    candidate.set(0, Side::X);
    for (Vertex i = 0; i + 1 < h.n(); ++i) {
        bool same = static_cast<std::int64_t>(degrees[static_cast<std::size_t>(i)]) >= threshold;
        Side prev = candidate.side(i);
        candidate.set(i + 1, same ? prev : other(prev));
    }
    rep.stage2_ns = elapsed_ns(t1);

    auto t2 = std::chrono::steady_clock::now();
    if (is_bipartition(h, candidate)) {
        rep.path = SolvePath::Step3i;
        rep.partition = std::move(candidate);
    } else {
        rep.path = SolvePath::Step3ii;
        try {
            if (auto p = exhaustive_bipartition(h))
                rep.partition = std::move(*p);
            else
                rep.status = SolveStatus::NotBipartite;
        } catch (const CapExceededError&) {
            rep.status = SolveStatus::CapExceeded;
        }
    }
    rep.stage3_ns = elapsed_ns(t2);
    return rep;
}

} // namespace khg
