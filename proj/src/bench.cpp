#include "khg/bench.hpp"

#include "khg/elem_bip.hpp"
#include "khg/exhaustive.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace khg {

void EnsembleConfig::validate() const {
    if (trials < 1) throw ValidationError("trials must be at least 1");
    if (n_list.empty()) throw ValidationError("empty size list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw ValidationError("size list must be strictly increasing");
    if (k < 3) throw ValidationError("uniformity must be at least 3");
    if (algo != "elem" && algo != "reg" && algo != "fano")
        throw ValidationError("unknown algorithm: " + algo);
    if (threads < 1) throw ValidationError("worker count must be at least 1");
}

namespace {

BenchRecord run_trial(const EnsembleConfig& cfg, int n, std::uint64_t trial_seed) {
    BenchRecord rec;
    rec.n = n;
    rec.k = cfg.k;
    rec.seed = trial_seed;
    rec.algo = cfg.algo;

    try {
        PlantedInstance inst = cfg.model == Model::Planted
                                   ? sample_planted(n, cfg.k,
                                                    sample_partition(n, cfg.partition, trial_seed),
                                                    trial_seed)
                                   : sample_near_uniform(n, cfg.k, cfg.partition, trial_seed);

        SolveReport rep;
        if (cfg.algo == "elem")
            rep = solve_elem(inst.hypergraph);
        else if (cfg.algo == "reg")
            rep = solve_reg(inst.hypergraph, cfg.reg);
        else
            rep = solve_fano(inst.hypergraph);

        rec.stage1_ns = rep.stage1_ns;
        rec.stage2_ns = rep.stage2_ns;
        rec.stage3_ns = rep.stage3_ns;
        rec.total_ns = rep.total_ns();

        if (rep.status == SolveStatus::Ok) {
            rec.path = to_string(rep.path);
            // re-validate before the record leaves the harness
            bool valid = !rep.partition || is_bipartition(inst.hypergraph, *rep.partition);
            rec.success = valid;
            if (rep.partition)
                rec.recovered_planted = equal_up_to_swap(*rep.partition, inst.planted);
            if (!valid) rec.path = "error";
        } else {
            rec.path = "error";
        }
        if (cfg.time_budget_ms > 0 && rec.total_ns > cfg.time_budget_ms * 1'000'000)
            rec.success = false; // budget exceedance recorded, not fatal
    } catch (const std::exception&) {
        rec.path = "error";
    }
    return rec;
}

void write_row(std::ostream& out, const BenchRecord& r) {
    out << r.n << ',' << r.k << ',' << r.seed << ',' << r.algo << ',' << r.path << ','
        << r.stage1_ns << ',' << r.stage2_ns << ',' << r.stage3_ns << ',' << r.total_ns << ','
        << (r.success ? 1 : 0) << ',' << (r.recovered_planted ? 1 : 0) << '\n';
}

} // namespace

std::vector<BenchRecord> run_bench(const EnsembleConfig& cfg, std::ostream* csv_sink) {
    cfg.validate();

    struct Trial {
        int n;
        int index;
        std::uint64_t seed;
    };
    std::vector<Trial> trials;
    for (int n : cfg.n_list)
        for (int t = 0; t < cfg.trials; ++t)
            trials.push_back({n, t,
                              rng::derive(cfg.seed, static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(t))});

    std::vector<BenchRecord> records(trials.size());
    std::vector<char> done(trials.size(), 0);
    std::atomic<std::size_t> cursor{0};
    std::mutex sink_mu;
    std::size_t next_flush = 0;

    if (csv_sink) *csv_sink << BENCH_CSV_HEADER << '\n';

    auto worker = [&] {
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= trials.size()) return;
            BenchRecord rec = run_trial(cfg, trials[i].n, trials[i].seed);
            std::lock_guard<std::mutex> lock(sink_mu);
            records[i] = std::move(rec);
            done[i] = 1;
            if (csv_sink)
                while (next_flush < trials.size() && done[next_flush])
                    write_row(*csv_sink, records[next_flush++]);
        }
    };

    int nthreads = std::min<int>(cfg.threads, static_cast<int>(trials.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (csv_sink) csv_sink->flush();
    return records;
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
    out << BENCH_CSV_HEADER << '\n';
    for (const auto& r : records) write_row(out, r);
}

std::vector<BenchRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty CSV");
    if (line != BENCH_CSV_HEADER) throw ValidationError("unexpected CSV header");
    std::vector<BenchRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        BenchRecord r;
        char comma;
        int success = 0, recovered = 0;
        auto bad = [&] {
            throw ValidationError("line " + std::to_string(lineno) + ": malformed CSV row");
        };
        if (!(ss >> r.n >> comma >> r.k >> comma >> r.seed >> comma)) bad();
        if (!std::getline(ss, r.algo, ',')) bad();
        if (!std::getline(ss, r.path, ',')) bad();
        if (!(ss >> r.stage1_ns >> comma >> r.stage2_ns >> comma >> r.stage3_ns >> comma >>
              r.total_ns >> comma >> success >> comma >> recovered))
            bad();
        r.success = success != 0;
        r.recovered_planted = recovered != 0;
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

double slope_of(const std::vector<std::pair<double, double>>& pts) {
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double num = 0, den = 0;
    for (auto [x, y] : pts) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    return num / den;
}

} // namespace

ScalingFit fit_scaling(std::span<const BenchRecord> records, int bootstrap, std::uint64_t seed) {
    std::vector<std::pair<int, std::vector<double>>> groups; // n -> fast-path times
    for (const auto& r : records) {
        if (r.path != "step3i" || !r.success) continue;
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == r.n; });
        if (it == groups.end()) {
            groups.push_back({r.n, {}});
            it = groups.end() - 1;
        }
        it->second.push_back(static_cast<double>(r.total_ns));
    }
    std::sort(groups.begin(), groups.end());
    if (groups.size() < 3) throw ValidationError("need at least 3 distinct sizes to fit");
    for (const auto& [n, times] : groups)
        if (times.size() < 10)
            throw ValidationError("need at least 10 fast-path records at n=" + std::to_string(n));

    ScalingFit fit;
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, times] : groups) {
        double mean = std::accumulate(times.begin(), times.end(), 0.0) /
                      static_cast<double>(times.size());
        fit.mean_ns_by_n.emplace_back(n, mean);
        pts.emplace_back(std::log(static_cast<double>(n)), std::log(mean));
    }
    fit.slope = slope_of(pts);

    std::vector<double> slopes;
    slopes.reserve(static_cast<std::size_t>(bootstrap));
    rng::Engine eng(seed);
    for (int b = 0; b < bootstrap; ++b) {
        std::vector<std::pair<double, double>> bpts;
        for (const auto& [n, times] : groups) {
            double acc = 0;
            for (std::size_t i = 0; i < times.size(); ++i)
                acc += times[eng.below(times.size())];
            bpts.emplace_back(std::log(static_cast<double>(n)),
                              std::log(acc / static_cast<double>(times.size())));
        }
        slopes.push_back(slope_of(bpts));
    }
    std::sort(slopes.begin(), slopes.end());
    auto pick = [&](double q) {
        auto idx = static_cast<std::size_t>(q * static_cast<double>(slopes.size() - 1));
        return slopes[idx];
    };
    fit.ci_lo = pick(0.025);
    fit.ci_hi = pick(0.975);
    return fit;
}

} // namespace khg
