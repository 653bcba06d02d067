#include "khg/bench.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace khg;

namespace {

bool same_modulo_timing(const BenchRecord& a, const BenchRecord& b) {
    return a.n == b.n && a.k == b.k && a.seed == b.seed && a.algo == b.algo && a.path == b.path &&
           a.success == b.success && a.recovered_planted == b.recovered_planted;
}

} // namespace

TEST_CASE("record count and order follow the configuration") {
    EnsembleConfig cfg;
    cfg.n_list = {40, 60};
    cfg.trials = 2;
    cfg.seed = 5;
    auto records = run_bench(cfg);
    REQUIRE(records.size() == 4);
    CHECK(records[0].n == 40);
    CHECK(records[1].n == 40);
    CHECK(records[2].n == 60);
    CHECK(records[3].n == 60);
    for (const auto& r : records) {
        CHECK(r.algo == "elem");
        CHECK(r.k == 3);
    }
}

TEST_CASE("reruns agree on everything except timings, including across workers") {
    EnsembleConfig cfg;
    cfg.n_list = {20, 30, 40};
    cfg.trials = 4;
    cfg.seed = 99;
    auto a = run_bench(cfg);
    auto b = run_bench(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_modulo_timing(a[i], b[i]));

    cfg.threads = 2;
    auto c = run_bench(cfg);
    REQUIRE(c.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_modulo_timing(a[i], c[i]));
}

TEST_CASE("CSV round trip") {
    EnsembleConfig cfg;
    cfg.n_list = {20, 30};
    cfg.trials = 3;
    cfg.seed = 7;
    std::ostringstream sink;
    auto records = run_bench(cfg, &sink);

    std::istringstream in(sink.str());
    auto back = read_csv(in);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(back[i] == records[i]);

    std::istringstream bad("nope\n");
    CHECK_THROWS_AS(read_csv(bad), ValidationError);
}

TEST_CASE("scaling fit on synthetic data") {
    auto synth = [](double c, double p) {
        std::vector<BenchRecord> records;
        for (int n : {10, 20, 40, 80})
            for (int t = 0; t < 10; ++t) {
                BenchRecord r;
                r.n = n;
                r.k = 3;
                r.algo = "elem";
                r.path = "step3i";
                r.success = true;
                r.total_ns = static_cast<std::int64_t>(c * std::pow(n, p));
                records.push_back(r);
            }
        return records;
    };

    ScalingFit cubic = fit_scaling(synth(5.0, 3.0));
    CHECK(cubic.slope == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(cubic.ci_lo == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(cubic.ci_hi == doctest::Approx(3.0).epsilon(1e-6));

    ScalingFit flat = fit_scaling(synth(1000.0, 0.0));
    CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-6));

    // too few sizes
    std::vector<BenchRecord> two;
    for (int n : {10, 20})
        for (int t = 0; t < 10; ++t) {
            BenchRecord r;
            r.n = n;
            r.path = "step3i";
            r.success = true;
            r.total_ns = n;
            two.push_back(r);
        }
    CHECK_THROWS_AS(fit_scaling(two), ValidationError);
}

TEST_CASE("configuration validation") {
    EnsembleConfig cfg;
    cfg.n_list = {};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.n_list = {30, 20};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.n_list = {20, 30};
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.trials = 1;
    cfg.algo = "bogus";
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("solved records validate their partitions and planted recovery") {
    EnsembleConfig cfg;
    cfg.n_list = {50, 60};
    cfg.trials = 5;
    cfg.seed = 3;
    auto records = run_bench(cfg);
    int recovered = 0;
    for (const auto& r : records) {
        if (r.path == "step3i") CHECK(r.success);
        recovered += r.recovered_planted;
    }
    CHECK(recovered >= 7); // most trials at these sizes recover the split
}
