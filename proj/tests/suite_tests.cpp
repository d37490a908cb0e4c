#include <catch_amalgamated.hpp>

#include <cbh/cbh.hpp>

using namespace cbh;

TEST_CASE("empty suite run is clean") {
    SuiteConfig cfg;
    cfg.trials = 0;
    SuiteReport rep = run_suite(cfg);
    REQUIRE(rep.clean());
    REQUIRE(rep.families.empty());
    REQUIRE(rep.violations.empty());
}

TEST_CASE("suite validates its configuration") {
    SuiteConfig cfg;
    cfg.dim = 4;
    REQUIRE_THROWS_AS(run_suite(cfg), std::invalid_argument);
    cfg.dim = 3;
    cfg.trials = -1;
    REQUIRE_THROWS_AS(run_suite(cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.ops = {"nonsense"};
    REQUIRE_THROWS_AS(run_suite(cfg), std::invalid_argument);
}

TEST_CASE("small suite run is clean and well formed") {
    SuiteConfig cfg;
    cfg.trials = 2;
    cfg.seed = 11;
    SuiteReport rep = run_suite(cfg);
    INFO("violations: " << rep.total_violations
                        << " equality failures: " << rep.total_equality_failures);
    for (const auto& v : rep.violations) INFO(v.family << " trial " << v.trial << ": " << v.message);
    REQUIRE(rep.clean());
    // 12 primal families per support kernel + 5 dual families
    REQUIRE(rep.families.size() == 12 + 12 + 5);
    for (const auto& f : rep.families) {
        REQUIRE(f.trials == 2);
        REQUIRE(f.violations == 0);
        REQUIRE_FALSE(f.rung.empty());
    }
    REQUIRE(rep.experiments.count("volume-product-ratio-min-pi") == 1);
    // the ball maximizes the polar volume product, so the ratio stays >= 1
    REQUIRE(rep.experiments.at("volume-product-ratio-min-pi") >= 1.0 - 1e-6);
}

TEST_CASE("reports are byte identical across runs of the same seed") {
    SuiteConfig cfg;
    cfg.trials = 1;
    cfg.seed = 23;
    cfg.ops = {"pi"};
    SuiteReport a = run_suite(cfg);
    SuiteReport b = run_suite(cfg);
    REQUIRE(to_json(a).dump() == to_json(b).dump());
    cfg.seed = 24;
    SuiteReport c = run_suite(cfg);
    REQUIRE(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("equality probes are scheduled every k-th trial") {
    SuiteConfig cfg;
    cfg.trials = 5;
    cfg.equality_every = 5;
    cfg.ops = {"pi"};
    SuiteReport rep = run_suite(cfg);
    for (const auto& f : rep.families) {
        if (f.id.rfind("lemma", 0) == 0 || f.id.rfind("af-", 0) == 0 ||
            f.id.rfind("polar-af-", 0) == 0)
            REQUIRE(f.equality_trials == 0);
        else
            REQUIRE(f.equality_trials == 1);
    }
    REQUIRE(rep.clean());
}

TEST_CASE("the deliberately broken kernel trips the suite") {
    SuiteConfig cfg;
    cfg.trials = 3;
    cfg.ops = {"odd-control"};
    SuiteReport rep = run_suite(cfg);
    REQUIRE_FALSE(rep.clean());
    REQUIRE(rep.total_violations > 0);
    REQUIRE_FALSE(rep.violations.empty());
    // violations carry reproduction data
    REQUIRE(rep.violations.front().seed != 0);
    REQUIRE_FALSE(rep.violations.front().message.empty());
}

TEST_CASE("report serialization round trips the key fields") {
    SuiteConfig cfg;
    cfg.trials = 1;
    cfg.ops = {"intersection"};
    SuiteReport rep = run_suite(cfg);
    json j = to_json(rep);
    REQUIRE(j.at("schema_version").get<int>() == 1);
    REQUIRE(j.at("config").at("trials").get<int>() == 1);
    REQUIRE(j.at("families").size() == rep.families.size());
    REQUIRE(j.at("total_violations").get<int>() == rep.total_violations);
    std::string csv = report_csv(rep);
    REQUIRE(csv.find("family") != std::string::npos);
    REQUIRE(csv.find("dual-af-intersection") != std::string::npos);
}
