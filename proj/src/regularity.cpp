#include "khg/regularity.hpp"

#include "khg/errors.hpp"
#include "khg/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace khg {

namespace {

// Exact subset sweep is used whenever 2^|A| * 2^|B| stays below this.
constexpr int EXACT_SUM_BITS = 24;

struct PairStats {
    std::vector<int> va, vb;        // member vertex ids
    std::vector<std::uint32_t> da;  // degree of va[i] into B
    std::vector<std::uint32_t> db;  // degree of vb[j] into A
    std::uint64_t e = 0;            // e(A, B)
};

PairStats pair_stats(const Graph& g, const BitSet& a, const BitSet& b) {
    PairStats s;
    s.va = a.to_vector();
    s.vb = b.to_vector();
    s.da.reserve(s.va.size());
    s.db.reserve(s.vb.size());
    for (int v : s.va) {
        auto d = static_cast<std::uint32_t>(g.degree_into(v, b));
        s.da.push_back(d);
        s.e += d;
    }
    for (int v : s.vb) s.db.push_back(static_cast<std::uint32_t>(g.degree_into(v, a)));
    return s;
}

// |e1/(a1 b1) - e2/(a2 b2)| >= eps, exactly (eps is a dyadic rational).
bool density_gap_at_least(std::uint64_t e1, std::uint64_t a1, std::uint64_t b1, std::uint64_t e2,
                          std::uint64_t a2, std::uint64_t b2, const Rational& eps) {
    __int128 lhs = static_cast<__int128>(e1) * (a2 * b2) - static_cast<__int128>(e2) * (a1 * b1);
    if (lhs < 0) lhs = -lhs;
    __int128 rhs = static_cast<__int128>(eps.num) * (a1 * b1) * (a2 * b2);
    return lhs * eps.den >= rhs;
}

// first integer strictly above eps * size
std::uint64_t min_qualifying(std::uint64_t size, const Rational& eps) {
    __int128 num = static_cast<__int128>(eps.num) * size;
    auto q = static_cast<std::uint64_t>(num / eps.den);
    return q + 1;
}

RegularityVerdict exact_check(const Graph& g, const BitSet& a, const BitSet& b, const Rational& eps) {
    auto va = a.to_vector();
    auto vb = b.to_vector();
    const std::size_t na = va.size(), nb = vb.size();

    // column masks: bits over A-indices adjacent to each b
    std::vector<std::uint32_t> bcol(nb, 0);
    std::uint64_t e = 0;
    for (std::size_t j = 0; j < nb; ++j) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < na; ++i)
            if (g.has_edge(va[i], vb[j])) mask |= (std::uint32_t{1} << i);
        bcol[j] = mask;
        e += static_cast<std::uint64_t>(std::popcount(mask));
    }

    const std::uint64_t amin = min_qualifying(na, eps);
    const std::uint64_t bmin = min_qualifying(nb, eps);

    std::vector<std::uint32_t> w(nb);
    for (std::uint32_t sa = 1; sa < (std::uint32_t{1} << na); ++sa) {
        auto asz = static_cast<std::uint64_t>(std::popcount(sa));
        if (asz < amin) continue;
        for (std::size_t j = 0; j < nb; ++j)
            w[j] = static_cast<std::uint32_t>(std::popcount(sa & bcol[j]));
        // Gray walk over B-subsets, maintaining e(A', B')
        std::uint64_t esub = 0;
        std::uint32_t prev_gray = 0;
        for (std::uint32_t gi = 1; gi < (std::uint32_t{1} << nb); ++gi) {
            std::uint32_t gray = gi ^ (gi >> 1);
            std::uint32_t toggled = gray ^ prev_gray; // exactly one bit
            unsigned j = static_cast<unsigned>(std::countr_zero(toggled));
            if (gray & toggled)
                esub += w[j];
            else
                esub -= w[j];
            prev_gray = gray;
            auto bsz = static_cast<std::uint64_t>(std::popcount(gray));
            if (bsz < bmin) continue;
            if (density_gap_at_least(esub, asz, bsz, e, na, nb, eps)) {
                BitSet wa(a.size()), wb(b.size());
                for (std::size_t i = 0; i < na; ++i)
                    if (sa & (std::uint32_t{1} << i)) wa.set(static_cast<std::size_t>(va[i]));
                for (std::size_t jj = 0; jj < nb; ++jj)
                    if (gray & (std::uint32_t{1} << jj)) wb.set(static_cast<std::size_t>(vb[jj]));
                RegularityVerdict v;
                v.kind = RegularityVerdict::Kind::Irregular;
                v.witness_a = std::move(wa);
                v.witness_b = std::move(wb);
                return v;
            }
        }
    }
    RegularityVerdict v;
    v.kind = RegularityVerdict::Kind::Certified;
    return v;
}

BitSet subset_from(const std::vector<int>& members, const std::vector<std::size_t>& idx,
                   std::size_t universe) {
    BitSet s(universe);
    for (auto i : idx) s.set(static_cast<std::size_t>(members[i]));
    return s;
}

// Low block of the two-cluster split of the degree profile: the cut point
// maximizes the between-cluster scatter k (c-k) (mean_hi - mean_lo)^2, which
// lands in the valley of a bimodal profile instead of on tail outliers.
// Empty when the profile is constant.
BitSet degree_split(const std::vector<int>& members, const std::vector<std::uint32_t>& deg,
                    std::size_t universe) {
    const std::size_t c = deg.size();
    BitSet s(universe);
    if (c < 2) return s;
    std::vector<std::size_t> ord(c);
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(),
                     [&](std::size_t x, std::size_t y) { return deg[x] < deg[y]; });
    std::uint64_t total = 0;
    for (auto d : deg) total += d;
    double best = 0;
    std::size_t cut = 0;
    std::uint64_t lo_sum = 0;
    for (std::size_t k = 1; k < c; ++k) {
        lo_sum += deg[ord[k - 1]];
        if (deg[ord[k]] == deg[ord[k - 1]]) continue; // cut between distinct values only
        double mean_lo = static_cast<double>(lo_sum) / static_cast<double>(k);
        double mean_hi =
            static_cast<double>(total - lo_sum) / static_cast<double>(c - k);
        double scatter = static_cast<double>(k) * static_cast<double>(c - k) *
                         (mean_hi - mean_lo) * (mean_hi - mean_lo);
        if (scatter > best) {
            best = scatter;
            cut = k;
        }
    }
    if (cut == 0) return s;
    for (std::size_t i = 0; i < cut; ++i) s.set(static_cast<std::size_t>(members[ord[i]]));
    return s;
}

RegularityVerdict heuristic_check(const Graph& g, const BitSet& a, const BitSet& b,
                                  double epsilon, const Rational& eps) {
    PairStats st = pair_stats(g, a, b);
    const std::uint64_t na = st.va.size(), nb = st.vb.size();
    const std::uint64_t ab = na * nb;
    const double d = static_cast<double>(st.e) / static_cast<double>(ab);

    RegularityVerdict certified;
    certified.kind = RegularityVerdict::Kind::Certified;
    if (st.e == 0 || st.e == ab) return certified; // constant pair: every subpair matches

    // index orders sorted by degree into the opposite class (ties by id)
    auto order_of = [](const std::vector<std::uint32_t>& deg) {
        std::vector<std::size_t> ord(deg.size());
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(),
                         [&](std::size_t x, std::size_t y) { return deg[x] < deg[y]; });
        return ord;
    };
    auto orda = order_of(st.da);
    auto ordb = order_of(st.db);

    auto half = [](const std::vector<std::size_t>& ord, bool top) {
        std::size_t h = ord.size() / 2;
        if (top) return std::vector<std::size_t>(ord.end() - static_cast<std::ptrdiff_t>(h), ord.end());
        return std::vector<std::size_t>(ord.begin(), ord.begin() + static_cast<std::ptrdiff_t>(h));
    };
    auto deviators = [&](const std::vector<std::uint32_t>& deg, std::uint64_t opp, bool up) {
        std::vector<std::size_t> out;
        double cut = d * static_cast<double>(opp);
        double off = epsilon * static_cast<double>(opp);
        for (std::size_t i = 0; i < deg.size(); ++i) {
            if (up && deg[i] >= cut + off) out.push_back(i);
            if (!up && deg[i] <= cut - off) out.push_back(i);
        }
        return out;
    };

    std::vector<std::vector<std::size_t>> cand_a = {half(orda, true), half(orda, false),
                                                    deviators(st.da, nb, true),
                                                    deviators(st.da, nb, false)};
    std::vector<std::vector<std::size_t>> cand_b = {half(ordb, true), half(ordb, false),
                                                    deviators(st.db, na, true),
                                                    deviators(st.db, na, false)};
    std::vector<std::size_t> full_a(na), full_b(nb);
    std::iota(full_a.begin(), full_a.end(), 0);
    std::iota(full_b.begin(), full_b.end(), 0);

    struct Cand {
        const std::vector<std::size_t>* ia;
        const std::vector<std::size_t>* ib;
        bool sel_a, sel_b; // side picked by degree order rather than taken whole
    };
    std::vector<Cand> cands;
    for (const auto& ca : cand_a) cands.push_back({&ca, &full_b, true, false});
    for (const auto& cb : cand_b) cands.push_back({&full_a, &cb, false, true});
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) cands.push_back({&cand_a[x], &cand_b[y], true, true});

    const std::uint64_t amin = min_qualifying(na, eps);
    const std::uint64_t bmin = min_qualifying(nb, eps);
    const double spread = std::sqrt(std::max(d * (1.0 - d), 0.0));
    bool gray_zone = false;

    for (const auto& c : cands) {
        std::uint64_t asz = c.ia->size(), bsz = c.ib->size();
        if (asz < amin || bsz < bmin) continue;
        BitSet sa = subset_from(st.va, *c.ia, a.size());
        BitSet sb = subset_from(st.vb, *c.ib, b.size());
        std::uint64_t esub = g.edges_between(sa, sb);
        double dsub = static_cast<double>(esub) / (static_cast<double>(asz) * static_cast<double>(bsz));
        double dev = std::fabs(dsub - d);
        // What an honest binomial pair would show for this candidate: the
        // density fluctuation at the subpair size plus the lift that comes
        // from having picked the subset by degree in the first place.
        double noise = spread / std::sqrt(static_cast<double>(asz) * static_cast<double>(bsz));
        double selection = spread * ((c.sel_a ? 0.8 / std::sqrt(static_cast<double>(nb)) : 0.0) +
                                     (c.sel_b ? 0.8 / std::sqrt(static_cast<double>(na)) : 0.0));
        if (dev >= epsilon + selection + 2.5 * noise &&
            density_gap_at_least(esub, asz, bsz, st.e, na, nb, eps)) {
            RegularityVerdict v;
            v.kind = RegularityVerdict::Kind::Irregular;
            v.witness_a = std::move(sa);
            v.witness_b = std::move(sb);
            return v;
        }
        // honest pairs show dev around `selection`; suspicion starts a few
        // noise units above that
        if (dev >= epsilon / 2 + selection + 1.5 * noise) gray_zone = true;
    }

    if (gray_zone) {
        RegularityVerdict v;
        v.kind = RegularityVerdict::Kind::Unknown;
        return v;
    }
    return certified;
}

} // namespace

double pair_density(const Graph& g, const BitSet& a, const BitSet& b) {
    if (!a.any() || !b.any()) throw ValidationError("density of an empty set");
    if (a.intersects(b)) throw ValidationError("density of overlapping sets");
    auto e = g.edges_between(a, b);
    return static_cast<double>(e) / (static_cast<double>(a.count()) * static_cast<double>(b.count()));
}

RegularityVerdict check_regular_pair(const Graph& g, const BitSet& a, const BitSet& b,
                                     double epsilon, RegConfig::Certificate mode) {
    if (!a.any() || !b.any()) throw ValidationError("regularity check on an empty set");
    if (a.intersects(b)) throw ValidationError("regularity check on overlapping sets");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
    Rational eps = Rational::from_double(epsilon);
    std::size_t na = a.count(), nb = b.count();

    RegularityVerdict v;
    if (mode == RegConfig::Certificate::ExhaustiveSmall) {
        if (na > 16 || nb > 16)
            throw ValidationError("exhaustive-small certificate needs classes of size at most 16");
        v = exact_check(g, a, b, eps);
    } else if (na + nb <= EXACT_SUM_BITS) {
        v = exact_check(g, a, b, eps);
    } else {
        v = heuristic_check(g, a, b, epsilon, eps);
    }
    if (v.kind != RegularityVerdict::Kind::Certified) {
        PairStats st = pair_stats(g, a, b);
        v.split_a = degree_split(st.va, st.da, a.size());
        v.split_b = degree_split(st.vb, st.db, b.size());
    }
    return v;
}

namespace {

// Cut the ordered vertex sequence into t chunks whose sizes differ by at
// most one. A chunk boundary is placed as close as possible to
// `target_prefix` (pass < 0 to skip); class ids are handed out so that the
// sizes are ascending in id, as the equitability shape requires.
EquitablePartition chop(const std::vector<Vertex>& order, int t, long target_prefix = -1) {
    EquitablePartition p;
    p.t = t;
    p.assignment.assign(order.size(), 0);
    auto n = static_cast<int>(order.size());
    int q = n / t, r = n % t;
    int smalls = t - r, bigs = r;

    // chunk sizes along the sequence; by default small chunks first
    std::vector<int> chunk_sizes;
    if (target_prefix >= 0 && q > 0) {
        long best = -1;
        int best_a = 0, best_b = 0;
        for (int a = 0; a <= smalls; ++a)
            for (int b = 0; b <= bigs; ++b) {
                long prefix = static_cast<long>(a) * q + static_cast<long>(b) * (q + 1);
                long miss = std::abs(prefix - target_prefix);
                if (best < 0 || miss < best) {
                    best = miss;
                    best_a = a;
                    best_b = b;
                }
            }
        for (int i = 0; i < best_a; ++i) chunk_sizes.push_back(q);
        for (int i = 0; i < best_b; ++i) chunk_sizes.push_back(q + 1);
        for (int i = 0; i < smalls - best_a; ++i) chunk_sizes.push_back(q);
        for (int i = 0; i < bigs - best_b; ++i) chunk_sizes.push_back(q + 1);
    } else {
        for (int i = 0; i < smalls; ++i) chunk_sizes.push_back(q);
        for (int i = 0; i < bigs; ++i) chunk_sizes.push_back(q + 1);
    }

    // ascending-size class ids: small chunks take the low ids in sequence order
    int next_small = 0, next_big = smalls;
    int pos = 0;
    for (int chunk = 0; chunk < t; ++chunk) {
        int sz = chunk_sizes[static_cast<std::size_t>(chunk)];
        int id = sz == q ? next_small++ : next_big++;
        for (int i = 0; i < sz; ++i)
            p.assignment[static_cast<std::size_t>(order[static_cast<std::size_t>(pos++)])] = id;
    }
    return p;
}

double partition_index(const Graph& g, const std::vector<BitSet>& classes) {
    double acc = 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto ci = static_cast<double>(classes[i].count());
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            auto cj = static_cast<double>(classes[j].count());
            if (ci == 0 || cj == 0) continue;
            auto e = static_cast<double>(g.edges_between(classes[i], classes[j]));
            double d = e / (ci * cj);
            acc += d * d * ci * cj;
        }
    }
    double n = static_cast<double>(g.n());
    return acc / (n * n);
}

} // namespace

RegularizeResult regularize(const Graph& g, const RegConfig& cfg) {
    const int n = g.n();
    if (cfg.t0 < 1 || cfg.t_cap < cfg.t0) throw ValidationError("bad class-count configuration");
    if (n < cfg.t0) throw ValidationError("fewer vertices than initial classes");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");

    constexpr int WITNESS_CAP_PER_CLASS = 8;
    constexpr int MIN_CLASS_FLOOR = 16;

    std::vector<Vertex> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    EquitablePartition part = chop(ids, cfg.t0);

    RegularizeResult res;
    for (int round = 1;; ++round) {
        auto classes = part.class_sets(n);
        int t = part.t;

        ClusterGraph cluster;
        cluster.t = t;
        std::vector<std::vector<const BitSet*>> class_witness(static_cast<std::size_t>(t));
        std::vector<RegularityVerdict> verdicts;
        // class_witness holds pointers into verdicts; the reserve below must
        // cover all C(t,2) pushes so they never move
        verdicts.reserve(static_cast<std::size_t>(t) * static_cast<std::size_t>(t - 1) / 2);
        std::size_t failing = 0;
        for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) {
                verdicts.push_back(
                    check_regular_pair(g, classes[static_cast<std::size_t>(i)],
                                       classes[static_cast<std::size_t>(j)], cfg.epsilon,
                                       cfg.certificate));
                const auto& v = verdicts.back();
                if (v.kind == RegularityVerdict::Kind::Certified)
                    cluster.regular_pairs.emplace_back(i, j);
                else
                    ++failing;
                if (v.kind != RegularityVerdict::Kind::Certified) {
                    auto& wi = class_witness[static_cast<std::size_t>(i)];
                    auto& wj = class_witness[static_cast<std::size_t>(j)];
                    if (v.split_a.any() && wi.size() < WITNESS_CAP_PER_CLASS)
                        wi.push_back(&v.split_a);
                    if (v.split_b.any() && wj.size() < WITNESS_CAP_PER_CLASS)
                        wj.push_back(&v.split_b);
                }
            }
        }

        RoundInfo info;
        info.t = t;
        info.index = partition_index(g, classes);
        info.failing_pairs = failing;
        auto sizes = part.sizes();
        auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
        info.min_class_size = *lo;
        info.max_class_size = *hi;
        res.rounds.push_back(info);

        res.partition = part;
        res.cluster = std::move(cluster);

        if (static_cast<double>(failing) <= cfg.epsilon * static_cast<double>(t) * t) {
            res.stop = RegStop::BudgetMet;
            return res;
        }
        if (round >= cfg.max_iterations) {
            res.stop = RegStop::MaxIterations;
            return res;
        }
        // Refinement never shrinks classes below the size where the pair
        // certificate can still tell structure from sampling noise.
        const int t_limit =
            std::max(1, std::min(cfg.t_cap, std::max(cfg.t0, std::min(n, n / MIN_CLASS_FLOOR))));

        bool any_witness = false;
        for (const auto& w : class_witness)
            if (!w.empty()) any_witness = true;
        if (!any_witness) {
            res.stop = RegStop::NoProgress;
            return res;
        }

        // Split every class into atoms by two votes: the majority over its
        // per-pair split sets, and the two-cluster cut of its global degree
        // profile. Agreeing vertices form the large clean atoms; conflicted
        // ones end up in small middle atoms absorbed at chop boundaries.
        struct Atom {
            std::uint64_t deg_sum = 0;
            int cls = 0;
            std::uint64_t sig = 0;
            std::vector<Vertex> members;
        };
        std::vector<Atom> atoms;
        for (int c = 0; c < t; ++c) {
            const auto& wit = class_witness[static_cast<std::size_t>(c)];
            std::vector<int> members = classes[static_cast<std::size_t>(c)].to_vector();
            std::vector<std::uint32_t> gdeg(members.size());
            for (std::size_t i = 0; i < members.size(); ++i)
                gdeg[i] = static_cast<std::uint32_t>(g.degree(members[i]));
            BitSet global_low =
                wit.empty() ? BitSet(static_cast<std::size_t>(n))
                            : degree_split(members, gdeg, static_cast<std::size_t>(n));
            std::vector<std::pair<std::uint64_t, Vertex>> tagged;
            classes[static_cast<std::size_t>(c)].for_each([&](std::size_t v) {
                std::size_t votes = 0;
                for (const auto* w : wit) votes += w->test(v);
                bool low = wit.empty() ? false : 2 * votes >= wit.size() + 1;
                std::uint64_t sig = (low ? 0 : 2) + (global_low.test(v) ? 0 : 1);
                tagged.emplace_back(sig, static_cast<Vertex>(v));
            });
            // order members by degree inside the atom so a later chop cuts
            // along the degree profile
            std::stable_sort(tagged.begin(), tagged.end(),
                             [&](const auto& x, const auto& y) {
                                 if (x.first != y.first) return x.first < y.first;
                                 auto dx = g.degree(x.second), dy = g.degree(y.second);
                                 if (dx != dy) return dx < dy;
                                 return x.second < y.second;
                             });
            for (std::size_t s = 0; s < tagged.size();) {
                std::size_t e = s;
                Atom atom;
                atom.cls = c;
                atom.sig = tagged[s].first;
                while (e < tagged.size() && tagged[e].first == tagged[s].first) {
                    atom.members.push_back(tagged[e].second);
                    atom.deg_sum += g.degree(tagged[e].second);
                    ++e;
                }
                atoms.push_back(std::move(atom));
                s = e;
            }
        }
        // Order atoms by average degree so same-role atoms sit together in
        // the chop; exact cross-multiplied comparison keeps it deterministic.
        std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
            __int128 lhs = static_cast<__int128>(x.deg_sum) * y.members.size();
            __int128 rhs = static_cast<__int128>(y.deg_sum) * x.members.size();
            if (lhs != rhs) return lhs < rhs;
            if (x.cls != y.cls) return x.cls < y.cls;
            return x.sig < y.sig;
        });
        std::vector<Vertex> order;
        order.reserve(static_cast<std::size_t>(n));
        for (const auto& atom : atoms) order.insert(order.end(), atom.members.begin(), atom.members.end());

        // largest average-degree jump between consecutive atoms: the chop
        // aligns one class boundary with it
        long target_prefix = -1;
        {
            double best_jump = 0;
            long prefix = 0;
            for (std::size_t i = 1; i < atoms.size(); ++i) {
                prefix += static_cast<long>(atoms[i - 1].members.size());
                double prev = static_cast<double>(atoms[i - 1].deg_sum) /
                              static_cast<double>(atoms[i - 1].members.size());
                double cur = static_cast<double>(atoms[i].deg_sum) /
                             static_cast<double>(atoms[i].members.size());
                double jump = std::fabs(cur - prev);
                if (jump > best_jump) {
                    best_jump = jump;
                    target_prefix = prefix;
                }
            }
        }

        // Realigning at the same class count must strictly improve the
        // index; growing the class count only has to preserve it.
        bool accepted = false;
        {
            EquitablePartition cand = chop(order, t, target_prefix);
            double idx = partition_index(g, cand.class_sets(n));
            if (idx > info.index + 1e-9) {
                part = std::move(cand);
                accepted = true;
            }
        }
        for (int t_new = std::min(2 * t, t_limit); !accepted && t_new > t;
             t_new = std::min(2 * t_new, t_limit)) {
            EquitablePartition cand = chop(order, t_new, target_prefix);
            double idx = partition_index(g, cand.class_sets(n));
            if (idx + 1e-12 >= info.index) {
                part = std::move(cand);
                accepted = true;
                break;
            }
            if (t_new == t_limit) break;
        }
        if (!accepted) {
            res.stop = t >= t_limit ? RegStop::CapReached : RegStop::NoProgress;
            return res;
        }
    }
}

ClusterSplit cluster_degree_split(const ClusterGraph& c, double epsilon) {
    ClusterSplit split;
    double cutoff = (1.0 - 2.0 * std::sqrt(epsilon)) * static_cast<double>(c.t);
    std::vector<std::size_t> deg(static_cast<std::size_t>(c.t), 0);
    for (auto [i, j] : c.regular_pairs) {
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < c.t; ++i) {
        if (static_cast<double>(deg[static_cast<std::size_t>(i)]) + 1e-9 >= cutoff)
            split.plus.push_back(i);
        else
            split.minus.push_back(i);
    }
    return split;
}

} // namespace khg
