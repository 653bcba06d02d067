// khg - generate, solve, verify and benchmark 2-colorings of k-uniform
// hypergraphs.

#include "khg/bench.hpp"
#include "khg/elem_bip.hpp"
#include "khg/exhaustive.hpp"
#include "khg/io.hpp"
#include "khg/reg_bip.hpp"
#include "khg/verifiers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using nlohmann::json;

namespace {

constexpr int EXIT_VALIDATION = 1;
constexpr int EXIT_NOT_BIPARTITE = 2;
constexpr int EXIT_CAP = 3;

std::string sidecar_path(const std::string& khg_path) {
    auto dot = khg_path.find_last_of('.');
    auto slash = khg_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return khg_path + ".part";
    return khg_path.substr(0, dot) + ".part";
}

json partition_json(const khg::Bipartition& p) {
    json x = json::array(), y = json::array();
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (p.side(static_cast<khg::Vertex>(v)) == khg::Side::X)
            x.push_back(v + 1);
        else
            y.push_back(v + 1);
    }
    return json{{"X", x}, {"Y", y}};
}

json report_json(const khg::SolveReport& rep) {
    json j{{"algo", rep.algo},
           {"status", khg::to_string(rep.status)},
           {"path_taken", khg::to_string(rep.path)},
           {"stage1_ns", rep.stage1_ns},
           {"stage2_ns", rep.stage2_ns},
           {"stage3_ns", rep.stage3_ns},
           {"total_ns", rep.total_ns()},
           {"n", rep.n},
           {"k", rep.k},
           {"m", rep.m}};
    if (rep.partition) j["partition"] = partition_json(*rep.partition);
    if (!rep.j_records.empty()) {
        json arr = json::array();
        for (const auto& r : rep.j_records) {
            json ids = json::array();
            for (auto v : r.j) ids.push_back(v + 1);
            arr.push_back(json{{"J", ids},
                               {"t", r.t},
                               {"regular_pairs", r.regular_pairs},
                               {"x_approx_size", r.x_approx_size},
                               {"sym_diff_to_output", r.sym_diff_to_output},
                               {"independent", r.independent},
                               {"degraded", r.degraded}});
        }
        j["j_records"] = arr;
    }
    if (rep.fano_case) j["case"] = rep.fano_case;
    if (rep.chromatic) {
        json classes = json::array();
        for (int c = 0; c < rep.chromatic->r; ++c) {
            json members = json::array();
            for (std::size_t v = 0; v < rep.chromatic->assignment.size(); ++v)
                if (rep.chromatic->assignment[v] == c) members.push_back(v + 1);
            classes.push_back(members);
        }
        j["r"] = rep.chromatic->r;
        j["classes"] = classes;
    }
    return j;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream f(out_path);
        if (!f) throw khg::ValidationError("cannot write " + out_path);
        f << j.dump(2) << '\n';
    }
}

int status_code(khg::SolveStatus s) {
    switch (s) {
    case khg::SolveStatus::Ok: return 0;
    case khg::SolveStatus::NotBipartite: return EXIT_NOT_BIPARTITE;
    case khg::SolveStatus::CapExceeded: return EXIT_CAP;
    }
    return EXIT_VALIDATION;
}

void dump_reg_partition(const std::string& path, const khg::ApproxCandidate& cand) {
    std::ofstream f(path);
    if (!f) throw khg::ValidationError("cannot write " + path);
    auto sets = cand.link_partition.class_sets(static_cast<int>(cand.link_to_parent.size()));
    for (int c = 0; c < cand.link_partition.t; ++c) {
        f << "class " << c + 1 << ":";
        sets[static_cast<std::size_t>(c)].for_each([&](std::size_t lv) {
            f << ' ' << cand.link_to_parent[lv] + 1;
        });
        f << '\n';
    }
    for (auto [i, j] : cand.link_cluster.regular_pairs)
        f << "regular: " << i + 1 << ' ' << j + 1 << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"2-coloring toolkit for k-uniform hypergraphs"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    int gen_n = 60, gen_k = 3;
    std::uint64_t gen_seed = 1;
    std::string gen_model = "planted", gen_pmode = "exact-balanced", gen_out;
    double gen_gamma = 0.1;
    bool gen_json = false;
    gen->add_option("-n,--vertices", gen_n, "vertex count");
    gen->add_option("-k,--uniformity", gen_k, "edge size");
    gen->add_option("--model", gen_model, "planted | near-uniform");
    gen->add_option("--partition", gen_pmode, "exact-balanced | binomial | gamma-equitable");
    gen->add_option("--gamma", gen_gamma, "gamma for gamma-equitable");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("-o,--output", gen_out, "output .khg path")->required();
    gen->add_flag("--json", gen_json, "print a JSON summary");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "2-color an instance");
    std::string solve_in, solve_algo = "elem", solve_out, solve_dump;
    double solve_eps = 0.1;
    int solve_tcap = 64;
    bool solve_json = false;
    solve->add_option("-i,--input", solve_in, "instance file")->required();
    solve->add_option("--algo", solve_algo, "elem | reg | fano");
    solve->add_option("--epsilon", solve_eps, "regularity parameter (reg)");
    solve->add_option("--t-cap", solve_tcap, "class cap (reg)");
    solve->add_option("-o,--output", solve_out, "write the JSON report here");
    solve->add_option("--dump-partition", solve_dump, "dump the link partition (reg)");
    solve->add_flag("--json", solve_json, "print the JSON report");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check structural predicates");
    std::string ver_in, ver_part, ver_out;
    double ver_sigma = -1, ver_delta = -1;
    int ver_samples = 500;
    std::uint64_t ver_seed = 1;
    bool ver_json = false;
    verify->add_option("-i,--input", ver_in, "instance file")->required();
    verify->add_option("--partition", ver_part, "partition sidecar file")->required();
    verify->add_option("--sigma", ver_sigma, "joint-degree band halfwidth");
    verify->add_option("--delta", ver_delta, "typicality parameter");
    verify->add_option("--samples", ver_samples, "Monte Carlo triples for the density checks");
    verify->add_option("--seed", ver_seed, "sampling seed");
    verify->add_option("-o,--output", ver_out, "write the JSON report here");
    verify->add_flag("--json", ver_json, "print the JSON report");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "run a timing ensemble");
    khg::EnsembleConfig bcfg;
    std::string bench_nlist = "40,60,80", bench_model = "planted",
                bench_pmode = "exact-balanced", bench_out;
    double bench_eps = 0.1;
    bool bench_fit = false;
    std::int64_t bench_budget = 0;
    bench->add_option("-k,--uniformity", bcfg.k, "edge size");
    bench->add_option("--n-list", bench_nlist, "comma-separated sizes, increasing");
    bench->add_option("--trials", bcfg.trials, "trials per size");
    bench->add_option("--seed", bcfg.seed, "master seed");
    bench->add_option("--model", bench_model, "planted | near-uniform");
    bench->add_option("--partition", bench_pmode, "partition mode");
    bench->add_option("--algo", bcfg.algo, "elem | reg | fano");
    bench->add_option("--epsilon", bench_eps, "regularity parameter (reg)");
    bench->add_option("--t-cap", bcfg.reg.reg.t_cap, "class cap (reg)");
    bench->add_option("--budget-ms", bench_budget, "per-trial time budget");
    bench->add_option("--threads", bcfg.threads, "worker cap");
    bench->add_option("-o,--output", bench_out, "CSV output path (default stdout)");
    bench->add_flag("--fit", bench_fit, "fit the log-log scaling slope afterwards");

    // ---- chromatic ----
    auto* chrom = app.add_subcommand("chromatic", "smallest partition into independent classes");
    std::string chrom_in, chrom_out;
    int chrom_rcap = 0;
    bool chrom_json = false;
    chrom->add_option("-i,--input", chrom_in, "instance file")->required();
    chrom->add_option("--r-cap", chrom_rcap, "largest class count to try (default n)");
    chrom->add_option("-o,--output", chrom_out, "write the JSON report here");
    chrom->add_flag("--json", chrom_json, "print the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_VALIDATION;
    }

    if (gen->parsed()) {
        khg::PartitionSpec spec = khg::PartitionSpec::parse(gen_pmode, gen_gamma);
        khg::PlantedInstance inst =
            gen_model == "planted"
                ? khg::sample_planted(gen_n, gen_k,
                                      khg::sample_partition(gen_n, spec, gen_seed), gen_seed)
            : gen_model == "near-uniform"
                ? khg::sample_near_uniform(gen_n, gen_k, spec, gen_seed)
                : throw khg::ValidationError("unknown model: " + gen_model);
        khg::write_khg_file(gen_out, inst.hypergraph);
        khg::write_part_file(sidecar_path(gen_out), inst.planted);
        json j{{"n", gen_n},
               {"k", gen_k},
               {"m", inst.hypergraph.m()},
               {"seed", gen_seed},
               {"model", gen_model},
               {"instance", gen_out},
               {"partition", sidecar_path(gen_out)}};
        if (gen_json)
            std::cout << j.dump(2) << '\n';
        else
            std::cout << "wrote " << gen_out << " (m=" << inst.hypergraph.m() << ") and "
                      << sidecar_path(gen_out) << '\n';
        return 0;
    }

    if (solve->parsed()) {
        khg::Hypergraph h = khg::read_khg_file(solve_in);
        khg::SolveReport rep;
        khg::RegBipConfig rcfg;
        rcfg.epsilon = solve_eps;
        rcfg.reg.t_cap = solve_tcap;
        if (solve_algo == "elem")
            rep = khg::solve_elem(h);
        else if (solve_algo == "reg")
            rep = khg::solve_reg(h, rcfg);
        else if (solve_algo == "fano")
            rep = khg::solve_fano(h);
        else
            throw khg::ValidationError("unknown algorithm: " + solve_algo);

        if (!solve_dump.empty() && solve_algo == "reg" && !rep.j_records.empty()) {
            // recompute the winning candidate's structures for the dump
            std::size_t pick = 0;
            for (std::size_t i = 0; i < rep.j_records.size(); ++i)
                if (rep.j_records[i].independent) {
                    pick = i;
                    break;
                }
            dump_reg_partition(solve_dump,
                               khg::approx_bipartition(h, rep.j_records[pick].j, rcfg));
        }

        json j = report_json(rep);
        if (solve_json || !solve_out.empty()) emit(j, solve_out);
        if (!solve_json && solve_out.empty()) {
            std::cout << rep.algo << ": " << khg::to_string(rep.status) << " via "
                      << khg::to_string(rep.path) << " in " << rep.total_ns() << " ns\n";
            if (rep.partition) {
                std::ostringstream ss;
                khg::write_part(ss, *rep.partition);
                std::cout << ss.str();
            }
            if (rep.chromatic) std::cout << "r = " << rep.chromatic->r << '\n';
        }
        return status_code(rep.status);
    }

    if (verify->parsed()) {
        khg::Hypergraph h = khg::read_khg_file(ver_in);
        khg::Bipartition p = khg::read_part_file(ver_part, h.n());
        if ((ver_sigma > 0) == (ver_delta > 0))
            throw khg::ValidationError("pass exactly one of --sigma or --delta");
        json j;
        bool pass = false;
        if (ver_sigma > 0) {
            khg::SigmaReport rep = khg::check_sigma_standard(h, p, ver_sigma);
            if (!rep.sigma_in_theory_range)
                std::cerr << "note: sigma outside (0, 2^-k); computing anyway\n";
            pass = rep.pass;
            json viols = json::array();
            for (const auto& v : rep.violations)
                viols.push_back(json{{"u", v.u + 1},
                                     {"v", v.v + 1},
                                     {"observed", v.observed},
                                     {"band", {v.band_lo, v.band_hi}},
                                     {"same_side", v.same_side}});
            j = json{{"check", "sigma"},
                     {"sigma", rep.sigma},
                     {"sigma_in_theory_range", rep.sigma_in_theory_range},
                     {"pairs_checked", rep.pairs_checked},
                     {"violations", viols},
                     {"pass", rep.pass}};
        } else {
            khg::TypicalityReport rep = khg::check_delta_typical(h, p, ver_delta, ver_samples, ver_seed);
            pass = rep.pass();
            json qv = json::array();
            for (const auto& v : rep.q_violations)
                qv.push_back(json{{"vertex", v.vertex + 1},
                                  {"observed", v.observed},
                                  {"band", {v.lo, v.hi}}});
            json rv = json::array();
            for (const auto& v : rep.r_violations) {
                json ids = json::array();
                for (auto x : v.j) ids.push_back(x + 1);
                rv.push_back(json{{"J", ids},
                                  {"property", v.property},
                                  {"observed", v.observed},
                                  {"band", {v.lo, v.hi}}});
            }
            j = json{{"check", "delta"},
                     {"delta", rep.delta},
                     {"mode", rep.exact_mode ? "exact" : "sampled"},
                     {"P_pass", rep.p_pass},
                     {"P_note", rep.p_note},
                     {"Q_pass", rep.q_pass},
                     {"Q_violations", qv},
                     {"R_samples", rep.r_samples},
                     {"R_violations", rv},
                     {"R_pass", rep.r_pass},
                     {"seed", rep.seed},
                     {"pass", pass}};
        }
        if (ver_json || !ver_out.empty())
            emit(j, ver_out);
        else
            std::cout << (pass ? "pass" : "fail") << '\n';
        return 0;
    }

    if (bench->parsed()) {
        bcfg.n_list.clear();
        std::istringstream ss(bench_nlist);
        std::string tok;
        while (std::getline(ss, tok, ',')) bcfg.n_list.push_back(std::stoi(tok));
        bcfg.model = bench_model == "planted" ? khg::Model::Planted
                     : bench_model == "near-uniform"
                         ? khg::Model::NearUniform
                         : throw khg::ValidationError("unknown model: " + bench_model);
        bcfg.partition = khg::PartitionSpec::parse(bench_pmode, 0.1);
        bcfg.reg.epsilon = bench_eps;
        bcfg.time_budget_ms = bench_budget;

        std::vector<khg::BenchRecord> records;
        if (bench_out.empty()) {
            records = khg::run_bench(bcfg, &std::cout);
        } else {
            std::ofstream f(bench_out);
            if (!f) throw khg::ValidationError("cannot write " + bench_out);
            records = khg::run_bench(bcfg, &f);
        }
        if (bench_fit) {
            try {
                khg::ScalingFit fit = khg::fit_scaling(records);
                std::cerr << "slope " << fit.slope << "  ci [" << fit.ci_lo << ", " << fit.ci_hi
                          << "]\n";
            } catch (const khg::ValidationError& e) {
                // the CSV is complete either way
                std::cerr << "fit unavailable: " << e.what() << '\n';
            }
        }
        return 0;
    }

    if (chrom->parsed()) {
        khg::Hypergraph h = khg::read_khg_file(chrom_in);
        int r_cap = chrom_rcap > 0 ? chrom_rcap : h.n();
        khg::ChromaticPartition cp = khg::smallest_partition(h, r_cap);
        json classes = json::array();
        for (int c = 0; c < cp.r; ++c) {
            json members = json::array();
            for (std::size_t v = 0; v < cp.assignment.size(); ++v)
                if (cp.assignment[v] == c) members.push_back(v + 1);
            classes.push_back(members);
        }
        json j{{"r", cp.r}, {"classes", classes}};
        if (chrom_json || !chrom_out.empty()) {
            emit(j, chrom_out);
        } else {
            std::cout << "r = " << cp.r << '\n';
            for (int c = 0; c < cp.r; ++c) {
                std::cout << "class " << c + 1 << ":";
                for (std::size_t v = 0; v < cp.assignment.size(); ++v)
                    if (cp.assignment[v] == c) std::cout << ' ' << v + 1;
                std::cout << '\n';
            }
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const khg::NotBipartiteError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_NOT_BIPARTITE;
    } catch (const khg::CapExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_CAP;
    } catch (const khg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_VALIDATION;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_VALIDATION;
    }
}
