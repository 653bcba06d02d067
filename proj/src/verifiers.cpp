#include "khg/verifiers.hpp"

#include "khg/combinatorics.hpp"
#include "khg/errors.hpp"
#include "khg/graph.hpp"
#include "khg/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace khg {

namespace {

// All-pairs joint degrees. Neighborhood bitsets over ranked (k-1)-sets when
// they fit, else sorted rank lists with pairwise merges.
template <typename F>
void for_each_pair_joint_degree(const Hypergraph& h, F&& f) {
    const int n = h.n();
    BinomialTable tab(static_cast<std::size_t>(n), static_cast<std::size_t>(h.k() - 1));
    std::uint64_t universe =
        binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(h.k() - 1));
    const std::uint64_t budget_bits = std::uint64_t{64} << 23; // 64 MiB of bitsets overall

    std::vector<int> j(static_cast<std::size_t>(h.k()) - 1);
    auto fill = [&](Vertex v, auto&& sink) {
        for (auto e : h.incidence(v)) {
            std::size_t idx = 0;
            for (Vertex w : h.edge(e))
                if (w != v) j[idx++] = w;
            sink(colex_rank(j, tab));
        }
    };

    if (static_cast<std::uint64_t>(n) * ((universe + 63) / 64) * 64 <= budget_bits) {
        std::vector<BitSet> nb(static_cast<std::size_t>(n), BitSet(universe));
        for (Vertex v = 0; v < n; ++v)
            fill(v, [&](std::uint64_t r) { nb[static_cast<std::size_t>(v)].set(r); });
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                f(u, v, static_cast<std::uint64_t>(
                            nb[static_cast<std::size_t>(u)].count_and(nb[static_cast<std::size_t>(v)])));
        return;
    }

    std::vector<std::vector<std::uint64_t>> ranks(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        ranks[static_cast<std::size_t>(v)].reserve(h.degree(v));
        fill(v, [&](std::uint64_t r) { ranks[static_cast<std::size_t>(v)].push_back(r); });
        std::sort(ranks[static_cast<std::size_t>(v)].begin(), ranks[static_cast<std::size_t>(v)].end());
    }
    for (Vertex u = 0; u < n; ++u) {
        const auto& ru = ranks[static_cast<std::size_t>(u)];
        for (Vertex v = u + 1; v < n; ++v) {
            const auto& rv = ranks[static_cast<std::size_t>(v)];
            std::uint64_t c = 0;
            std::size_t a = 0, b = 0;
            while (a < ru.size() && b < rv.size()) {
                if (ru[a] < rv[b])
                    ++a;
                else if (rv[b] < ru[a])
                    ++b;
                else {
                    ++c;
                    ++a;
                    ++b;
                }
            }
            f(u, v, c);
        }
    }
}

// Exact band test: value inside base * (cnum/cden +- width) / div. All
// comparisons in 128-bit integers; the double edges are for reporting only.
struct ExactBand {
    __int128 lo_num = 0, hi_num = 0, scale = 1; // in-band: lo_num <= value * scale <= hi_num
    double lo_d = 0, hi_d = 0;

    static ExactBand make(std::uint64_t base, std::int64_t cnum, std::int64_t cden,
                          const Rational& width, std::int64_t div = 1) {
        ExactBand b;
        __int128 c = static_cast<__int128>(cnum) * width.den;
        __int128 w = static_cast<__int128>(cden) * width.num;
        b.lo_num = static_cast<__int128>(base) * (c - w);
        b.hi_num = static_cast<__int128>(base) * (c + w);
        b.scale = static_cast<__int128>(cden) * width.den * div;
        b.lo_d = static_cast<double>(b.lo_num) / static_cast<double>(b.scale);
        b.hi_d = static_cast<double>(b.hi_num) / static_cast<double>(b.scale);
        return b;
    }

    bool contains(std::uint64_t value) const {
        __int128 v = static_cast<__int128>(value) * scale;
        return lo_num <= v && v <= hi_num;
    }
};

} // namespace

Rational expected_joint_degree(int n, int k, std::pair<int, int> sizes, DegreeCase c) {
    auto [x, y] = sizes;
    if (x + y != n) throw ValidationError("side sizes must sum to n");
    if (x < 0 || y < 0) throw ValidationError("negative side size");
    if ((c == DegreeCase::SameX && x < 2) || (c == DegreeCase::SameY && y < 2))
        throw ValidationError("same-side case needs at least two vertices on that side");
    auto C = [&](int a) {
        return static_cast<std::int64_t>(
            binomial(static_cast<std::uint64_t>(std::max(a, 0)), static_cast<std::uint64_t>(k - 1)));
    };
    switch (c) {
    case DegreeCase::SameX: return Rational(C(n - 2) - C(x - 2), 4);
    case DegreeCase::SameY: return Rational(C(n - 2) - C(y - 2), 4);
    case DegreeCase::Cross: return Rational(C(n - 2) - C(x - 1) - C(y - 1), 4);
    }
    throw ValidationError("bad case");
}

SigmaReport check_sigma_standard(const Hypergraph& h, const Bipartition& p, double sigma,
                                 int n_cap) {
    if (p.size() != static_cast<std::size_t>(h.n()))
        throw ValidationError("partition length mismatch");
    if (!(sigma > 0)) throw ValidationError("sigma must be positive");
    if (h.n() > n_cap)
        throw CapExceededError("all-pairs degree check capped at n=" + std::to_string(n_cap));

    const int k = h.k();
    SigmaReport rep;
    rep.sigma = sigma;
    rep.sigma_in_theory_range = sigma < std::ldexp(1.0, -k);

    Rational rel = Rational::from_double(sigma);
    std::uint64_t base =
        binomial(static_cast<std::uint64_t>(h.n()), static_cast<std::uint64_t>(k - 1));
    std::int64_t two_km1 = std::int64_t{1} << (k - 1);
    // same side: (1/4) base ((2^{k-1}-1)/2^{k-1} +- sigma)
    ExactBand same = ExactBand::make(base, two_km1 - 1, two_km1, rel, 4);
    ExactBand cross = ExactBand::make(base, two_km1 - 2, two_km1, rel, 4);

    for_each_pair_joint_degree(h, [&](Vertex u, Vertex v, std::uint64_t deg) {
        ++rep.pairs_checked;
        bool same_side = p.side(u) == p.side(v);
        const ExactBand& band = same_side ? same : cross;
        if (!band.contains(deg))
            rep.violations.push_back({u, v, deg, band.lo_d, band.hi_d, same_side});
    });
    rep.pass = rep.violations.empty();
    return rep;
}

namespace {

struct LinkGraphCache {
    std::vector<Vertex> key;
    Graph g;
    std::vector<Vertex> from_parent;
};

void build_link_graph(const Hypergraph& h, std::span<const Vertex> j_set, LinkGraphCache& cache) {
    std::vector<Vertex> key(j_set.begin(), j_set.end());
    std::sort(key.begin(), key.end());
    if (key == cache.key) return;
    Link lk = link(h, key);
    cache.key = std::move(key);
    cache.g = Graph::from_two_uniform(lk.h);
    cache.from_parent = std::move(lk.from_parent);
}

} // namespace

TypicalityReport check_delta_typical(const Hypergraph& h, const Bipartition& p, double delta,
                                     int samples, std::uint64_t seed, int exact_cap) {
    if (p.size() != static_cast<std::size_t>(h.n()))
        throw ValidationError("partition length mismatch");
    if (!(delta > 0)) throw ValidationError("delta must be positive");

    const int n = h.n();
    const int k = h.k();
    TypicalityReport rep;
    rep.delta = delta;
    rep.seed = seed;
    rep.exact_mode = n <= exact_cap;

    Rational rel = Rational::from_double(delta);
    const std::int64_t nx = static_cast<std::int64_t>(p.count(Side::X));
    const std::int64_t ny = n - nx;

    // (P) |X|, |Y| = (1 +- delta) n/2
    {
        ExactBand band = ExactBand::make(static_cast<std::uint64_t>(n), 1, 1, rel, 2);
        rep.p_pass = band.contains(static_cast<std::uint64_t>(nx)) &&
                     band.contains(static_cast<std::uint64_t>(ny));
        if (!rep.p_pass)
            rep.p_note = "side sizes " + std::to_string(nx) + "/" + std::to_string(ny) +
                         " outside (1±delta) n/2 = [" + std::to_string(band.lo_d) + ", " +
                         std::to_string(band.hi_d) + "]";
    }

    // (Q) cross degrees into the opposite side
    {
        BitSet xs = p.side_set(Side::X), ys = p.side_set(Side::Y);
        ExactBand into_y = ExactBand::make(
            binomial(static_cast<std::uint64_t>(ny), static_cast<std::uint64_t>(k - 1)), 1, 1, rel, 2);
        ExactBand into_x = ExactBand::make(
            binomial(static_cast<std::uint64_t>(nx), static_cast<std::uint64_t>(k - 1)), 1, 1, rel, 2);
        for (Vertex v = 0; v < n; ++v) {
            bool on_x = p.side(v) == Side::X;
            const BitSet& target = on_x ? ys : xs;
            const ExactBand& band = on_x ? into_y : into_x;
            std::uint64_t deg = degree_into(h, v, target);
            if (!band.contains(deg)) rep.q_violations.push_back({v, deg, band.lo_d, band.hi_d});
        }
        rep.q_pass = rep.q_violations.empty();
    }

    // (R) link densities over disjoint triples (J, X0, Y0), |X0|,|Y0| > delta n
    auto qualifies = [&](std::uint64_t size) {
        // size > delta * n, strict
        return static_cast<__int128>(size) * rel.den > static_cast<__int128>(rel.num) * n;
    };
    auto check_triple = [&](const LinkGraphCache& lg, std::span<const Vertex> j_set,
                            const BitSet& x0, const BitSet& y0, bool j_in_x, bool j_in_y) {
        std::uint64_t sx = x0.count(), sy = y0.count();
        // R1: e(X0, Y0) = (1 +- delta) (1/2) |X0||Y0|
        {
            std::uint64_t e = lg.g.edges_between(x0, y0);
            ExactBand band = ExactBand::make(sx * sy, 1, 1, rel, 2);
            if (!band.contains(e))
                rep.r_violations.push_back(
                    {{j_set.begin(), j_set.end()}, 1, e, band.lo_d, band.hi_d});
        }
        // R2: e(X0) zero when J inside X, else (1 +- delta) (1/2) C(|X0|, 2)
        {
            std::uint64_t e = lg.g.edges_within(x0);
            if (j_in_x) {
                if (e != 0)
                    rep.r_violations.push_back({{j_set.begin(), j_set.end()}, 2, e, 0.0, 0.0});
            } else {
                ExactBand band = ExactBand::make(sx * (sx - 1) / 2, 1, 1, rel, 2);
                if (!band.contains(e))
                    rep.r_violations.push_back(
                        {{j_set.begin(), j_set.end()}, 2, e, band.lo_d, band.hi_d});
            }
        }
        // R3: symmetric on Y0
        {
            std::uint64_t e = lg.g.edges_within(y0);
            if (j_in_y) {
                if (e != 0)
                    rep.r_violations.push_back({{j_set.begin(), j_set.end()}, 3, e, 0.0, 0.0});
            } else {
                ExactBand band = ExactBand::make(sy * (sy - 1) / 2, 1, 1, rel, 2);
                if (!band.contains(e))
                    rep.r_violations.push_back(
                        {{j_set.begin(), j_set.end()}, 3, e, band.lo_d, band.hi_d});
            }
        }
        ++rep.r_samples;
    };

    auto side_of = [&](std::span<const Vertex> j_set, Side s) {
        for (Vertex v : j_set)
            if (p.side(v) != s) return false;
        return true;
    };

    LinkGraphCache lg;
    if (rep.exact_mode) {
        std::vector<int> xm = p.side_set(Side::X).to_vector();
        std::vector<int> ym = p.side_set(Side::Y).to_vector();
        for_each_subset(n, k - 2, [&](std::span<const int> j_raw) {
            std::vector<Vertex> j_set(j_raw.begin(), j_raw.end());
            build_link_graph(h, j_set, lg);
            bool jx = side_of(j_set, Side::X), jy = side_of(j_set, Side::Y);
            auto in_j = [&](int v) {
                return std::find(j_set.begin(), j_set.end(), v) != j_set.end();
            };
            std::vector<int> xf, yf;
            for (int v : xm)
                if (!in_j(v)) xf.push_back(v);
            for (int v : ym)
                if (!in_j(v)) yf.push_back(v);
            if (xf.size() > 20 || yf.size() > 20)
                throw CapExceededError("exact typicality enumeration too large");
            // translate to link-vertex bitsets once per subset mask
            std::vector<BitSet> x_subsets, y_subsets;
            for (std::uint32_t mx = 1; mx < (std::uint32_t{1} << xf.size()); ++mx) {
                if (!qualifies(static_cast<std::uint64_t>(std::popcount(mx)))) continue;
                BitSet s(static_cast<std::size_t>(lg.g.n()));
                for (std::size_t i = 0; i < xf.size(); ++i)
                    if (mx & (std::uint32_t{1} << i))
                        s.set(static_cast<std::size_t>(
                            lg.from_parent[static_cast<std::size_t>(xf[i])]));
                x_subsets.push_back(std::move(s));
            }
            for (std::uint32_t my = 1; my < (std::uint32_t{1} << yf.size()); ++my) {
                if (!qualifies(static_cast<std::uint64_t>(std::popcount(my)))) continue;
                BitSet s(static_cast<std::size_t>(lg.g.n()));
                for (std::size_t i = 0; i < yf.size(); ++i)
                    if (my & (std::uint32_t{1} << i))
                        s.set(static_cast<std::size_t>(
                            lg.from_parent[static_cast<std::size_t>(yf[i])]));
                y_subsets.push_back(std::move(s));
            }
            for (const auto& x0 : x_subsets)
                for (const auto& y0 : y_subsets) check_triple(lg, j_set, x0, y0, jx, jy);
        });
    } else {
        BitSet xs = p.side_set(Side::X), ys = p.side_set(Side::Y);
        for (int s = 0; s < samples; ++s) {
            std::uint64_t sseed = rng::derive(seed, static_cast<std::uint64_t>(s));
            rng::Engine eng(sseed);
            // J: uniform (k-2)-subset of the vertices
            std::vector<Vertex> pool(static_cast<std::size_t>(n));
            std::iota(pool.begin(), pool.end(), 0);
            std::vector<Vertex> j_set;
            for (int i = 0; i < k - 2; ++i) {
                std::size_t pick = static_cast<std::size_t>(i) +
                                   static_cast<std::size_t>(eng.below(static_cast<std::uint64_t>(n - i)));
                std::swap(pool[static_cast<std::size_t>(i)], pool[pick]);
                j_set.push_back(pool[static_cast<std::size_t>(i)]);
            }
            std::sort(j_set.begin(), j_set.end());
            build_link_graph(h, j_set, lg);

            bool ok = false;
            BitSet x0(static_cast<std::size_t>(lg.g.n())), y0(static_cast<std::size_t>(lg.g.n()));
            for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
                x0.clear();
                y0.clear();
                std::uint64_t coins = rng::derive(sseed, static_cast<std::uint64_t>(attempt) + 1);
                for (Vertex v = 0; v < n; ++v) {
                    Vertex lv = lg.from_parent[static_cast<std::size_t>(v)];
                    if (lv < 0) continue;
                    if (!(rng::element(coins, static_cast<std::uint64_t>(v)) >> 63)) continue;
                    if (xs.test(static_cast<std::size_t>(v)))
                        x0.set(static_cast<std::size_t>(lv));
                    else
                        y0.set(static_cast<std::size_t>(lv));
                }
                ok = qualifies(x0.count()) && qualifies(y0.count());
            }
            if (!ok) continue; // no qualifying triple drawn for this sample
            check_triple(lg, j_set, x0, y0, side_of(j_set, Side::X), side_of(j_set, Side::Y));
        }
    }
    rep.r_pass = rep.r_violations.empty();
    return rep;
}

bool check_gamma_equitable(const Bipartition& p, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in (0,1)");
    Rational g = Rational::from_double(gamma);
    auto n = static_cast<std::int64_t>(p.size());
    auto nx = static_cast<std::int64_t>(p.count(Side::X));
    std::int64_t smaller = std::min(nx, n - nx), larger = std::max(nx, n - nx);
    // (1-gamma) n/2 <= smaller  and  larger <= (1+gamma) n/2
    __int128 lo_ok = static_cast<__int128>(2 * smaller) * g.den -
                     static_cast<__int128>(n) * (g.den - g.num);
    __int128 hi_ok = static_cast<__int128>(n) * (g.den + g.num) -
                     static_cast<__int128>(2 * larger) * g.den;
    return lo_ok >= 0 && hi_ok >= 0;
}

JointDegreeStats joint_degree_stats(const Hypergraph& h, const Bipartition& p, int n_cap) {
    if (p.size() != static_cast<std::size_t>(h.n()))
        throw ValidationError("partition length mismatch");
    if (h.n() > n_cap)
        throw CapExceededError("all-pairs degree stats capped at n=" + std::to_string(n_cap));

    JointDegreeStats st;
    auto init = [](CaseStats& c) { c.min = std::numeric_limits<double>::infinity(); };
    init(st.same_x);
    init(st.same_y);
    init(st.cross);

    for_each_pair_joint_degree(h, [&](Vertex u, Vertex v, std::uint64_t deg) {
        CaseStats& c = p.side(u) != p.side(v)        ? st.cross
                       : p.side(u) == Side::X        ? st.same_x
                                                     : st.same_y;
        ++c.pairs;
        auto d = static_cast<double>(deg);
        c.mean += d;
        c.min = std::min(c.min, d);
        c.max = std::max(c.max, d);
    });

    auto nx = static_cast<int>(p.count(Side::X));
    auto finish = [&](CaseStats& c, DegreeCase dc) {
        if (c.pairs == 0) {
            c.min = 0;
            return;
        }
        c.mean /= static_cast<double>(c.pairs);
        c.expected = expected_joint_degree(h.n(), h.k(), {nx, h.n() - nx}, dc).to_double();
        c.rel_deviation = c.expected != 0.0 ? std::fabs(c.mean - c.expected) / c.expected
                                            : std::fabs(c.mean);
    };
    finish(st.same_x, DegreeCase::SameX);
    finish(st.same_y, DegreeCase::SameY);
    finish(st.cross, DegreeCase::Cross);
    return st;
}

} // namespace khg
