#pragma once

#include <map>

#include "inequalities.hpp"

namespace cbh {

struct SuiteConfig {
    int dim = 3;
    int trials = 200;
    std::uint64_t seed = 7;
    std::vector<std::string> ops{"pi", "theta", "intersection"};
    int resolution = 6;
    int equality_every = 5;  // every k-th trial probes the equality case
};

struct ViolationNote {
    std::string family;
    int trial = 0;
    std::uint64_t seed = 0;
    double margin = 0.0;
    std::string message;
};

struct FamilyStats {
    std::string id;
    std::string rung;
    int trials = 0;
    int violations = 0;
    int equality_trials = 0;
    int equality_failures = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_equality = 0.0;
};

struct SuiteReport {
    int schema_version = 1;
    SuiteConfig config;
    std::vector<FamilyStats> families;
    std::vector<ViolationNote> violations;
    std::map<std::string, double> experiments;
    int total_violations = 0;
    int total_equality_failures = 0;

    bool clean() const { return total_violations == 0 && total_equality_failures == 0; }
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t base, const std::string& family, int trial) {
    std::uint64_t h = base;
    for (char c : family) h = mix64(h ^ static_cast<unsigned char>(c));
    return mix64(h ^ static_cast<std::uint64_t>(trial));
}

}  // namespace detail

/// Driver for one theorem family: calls `make_checks(seed, equality)` per
/// trial, aggregates margins, records violations with reproduction seeds.
/// A throwing trial is itself counted as a violation (the negative-control
/// kernel degenerates by design and must be caught, not crash the suite).
template <typename MakeChecks>
inline void run_family(SuiteReport& report, const std::string& family, const SuiteConfig& cfg,
                       MakeChecks&& make_checks, bool equality_probes = true) {
    FamilyStats st;
    st.id = family;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        bool equality = equality_probes && cfg.equality_every > 0 &&
                        trial % cfg.equality_every == cfg.equality_every - 1;
        std::uint64_t seed = detail::trial_seed(cfg.seed, family, trial);
        ++st.trials;
        if (equality) ++st.equality_trials;
        std::vector<TheoremCheck> checks;
        try {
            checks = make_checks(seed, equality);
        } catch (const std::exception& e) {
            ++st.violations;
            report.violations.push_back({family, trial, seed, 0.0,
                                         std::string("exception: ") + e.what()});
            continue;
        }
        for (const auto& c : checks) {
            if (st.rung.empty()) st.rung = c.rung;
            if (std::isfinite(c.margin)) {
                st.min_margin = std::min(st.min_margin, c.margin);
                if (c.equality_expected)
                    st.worst_equality = std::max(st.worst_equality, std::abs(c.margin));
            }
            if (c.passed()) continue;
            if (c.equality_expected) {
                ++st.equality_failures;
                report.violations.push_back({family, trial, seed, c.margin,
                                             c.id + ": equality case off by " +
                                                 std::to_string(c.margin)});
            } else {
                ++st.violations;
                report.violations.push_back({family, trial, seed, c.margin,
                                             c.id + ": margin " + std::to_string(c.margin)});
            }
        }
    }
    if (!std::isfinite(st.min_margin)) st.min_margin = 0.0;
    report.total_violations += st.violations;
    report.total_equality_failures += st.equality_failures;
    report.families.push_back(std::move(st));
}

namespace detail {

struct PolytopePair {
    Polytope K, L;
};

inline PolytopePair random_pair(std::uint64_t seed, bool homothets, const SphericalGrid& g) {
    std::mt19937_64 rng(mix64(seed));
    std::uniform_int_distribution<int> kdist(8, 16);
    int k1 = kdist(rng), k2 = kdist(rng);
    Polytope K = random_polytope(rng(), k1, g);
    if (!homothets) return {std::move(K), random_polytope(rng(), k2, g)};
    std::uniform_real_distribution<double> lam(0.5, 2.0), shift(-0.2, 0.2);
    double l = lam(rng);
    Vector3d t(shift(rng), shift(rng), shift(rng));
    Polytope L = translate(dilate(K, l), t);
    return {std::move(K), std::move(L)};
}

struct StarPair {
    StarBody K, L;
};

inline StarPair random_star_pair(std::uint64_t seed, bool dilates_probe, GridPtr grid) {
    std::mt19937_64 rng(mix64(seed));
    StarBody K = random_star_body(rng(), 3, grid);
    if (!dilates_probe) return {K, random_star_body(rng(), 3, grid)};
    std::uniform_real_distribution<double> lam(0.5, 2.0);
    return {K, dilate(K, lam(rng))};
}

}  // namespace detail

/// Run every registered theorem family for the configured operators.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
    if (cfg.dim != 3)
        throw std::invalid_argument("run_suite: the verification suite runs at dim 3");
    if (cfg.trials < 0) throw std::invalid_argument("run_suite: trials >= 0 required");
    SuiteReport report;
    report.config = cfg;
    if (cfg.trials == 0) return report;

    GridPtr grid = build_grid(3, cfg.resolution);
    Polytope ball = ball_polytope(*grid);

    auto kernel_by_name = [](const std::string& name) {
        if (name == "pi") return projection_kernel();
        if (name == "theta") return disc_kernel();
        if (name == "odd-control") return odd_control_kernel();
        throw std::invalid_argument("unknown operator: " + name);
    };

    for (const auto& op : cfg.ops) {
        if (op == "intersection") {
            DualCtx dc{intersection_measure(3), grid};
            auto pair = [&](std::uint64_t s, bool eq) {
                return detail::random_star_pair(s, eq, grid);
            };
            run_family(report, "dual-af-" + op, cfg, [&](std::uint64_t s, bool eq) {
                auto [K, L] = pair(s, eq);
                return check_dual_af(dc, K, L, 2, eq);
            });
            run_family(report, "dual-cor-" + op, cfg, [&](std::uint64_t s, bool eq) {
                auto [K, L] = pair(s, eq);
                return check_dual_cor(dc, K, L, eq);
            });
            run_family(report, "dual-bm-" + op, cfg, [&](std::uint64_t s, bool eq) {
                auto [K, L] = pair(s, eq);
                return check_dual_bm(dc, K, L, eq);
            });
            run_family(report, "lemma-dual-wij-" + op, cfg, [&](std::uint64_t s, bool) {
                auto [K, L] = pair(s, false);
                return check_lemma_dual_wij(dc, K, L);
            }, false);
            run_family(report, "lemma-dual-wn1-" + op, cfg, [&](std::uint64_t s, bool) {
                auto [K, L] = pair(s, false);
                return check_lemma_dual_wn1(dc, K);
            }, false);
            continue;
        }

        PrimalCtx pc{kernel_by_name(op), grid, ball};
        auto pair = [&](std::uint64_t s, bool eq) { return detail::random_pair(s, eq, *grid); };

        run_family(report, "minkowski-" + op, cfg, [&](std::uint64_t s, bool eq) {
            auto [K, L] = pair(s, eq);
            return check_minkowski_bm(pc, K, L, eq);
        });
        run_family(report, "af-" + op, cfg, [&](std::uint64_t s, bool) {
            auto [K, L] = pair(s, false);
            return check_af_bm(pc, K, L);
        }, false);
        run_family(report, "cor-product-" + op, cfg, [&](std::uint64_t s, bool eq) {
            auto [K, L] = pair(s, eq);
            return check_cor_product(pc, K, L, eq);
        });
        run_family(report, "cor-phij-" + op, cfg, [&](std::uint64_t s, bool eq) {
            auto [K, L] = pair(s, eq);
            return check_cor_phi_j(pc, K, L, eq);
        });
        run_family(report, "bm-" + op, cfg, [&](std::uint64_t s, bool eq) {
            auto [K, L] = pair(s, eq);
            return check_bm_bm(pc, K, L, eq);
        });
        run_family(report, "polar-minkowski-" + op, cfg, [&](std::uint64_t s, bool eq) {
            auto [K, L] = pair(s, eq);
            return CheckList{check_polar_minkowski(pc, K, L, eq)};
        });
        run_family(report, "polar-af-" + op, cfg, [&](std::uint64_t s, bool) {
            auto [K, L] = pair(s, false);
            return check_polar_af(pc, K, L);
        }, false);
        run_family(report, "polar-cor-" + op, cfg, [&](std::uint64_t s, bool eq) {
            auto [K, L] = pair(s, eq);
            return CheckList{check_polar_cor(pc, K, L, eq)};
        });
        run_family(report, "polar-bm-" + op, cfg, [&](std::uint64_t s, bool eq) {
            auto [K, L] = pair(s, eq);
            return CheckList{check_polar_bm(pc, K, L, eq)};
        });
        run_family(report, "lemma-wij-" + op, cfg, [&](std::uint64_t s, bool) {
            auto [K, L] = pair(s, false);
            return check_lemma_wij(pc, K, L);
        }, false);
        run_family(report, "lemma-wn1-" + op, cfg, [&](std::uint64_t s, bool) {
            auto [K, L] = pair(s, false);
            return check_lemma_wn1(pc, K);
        }, false);
        run_family(report, "lemma-polar-mphi-" + op, cfg, [&](std::uint64_t s, bool) {
            auto [K, L] = pair(s, false);
            std::mt19937_64 rng(detail::mix64(s ^ 0xabcdULL));
            StarBody Ls = random_star_body(rng(), 3, grid);
            return std::vector<TheoremCheck>{check_lemma_polar_mphi(pc, Ls, K, L)};
        }, false);

        // descriptive experiment, never asserted: the volume-product ratio
        // V(K)^2 V(Phi* K) relative to its value at the ball
        try {
            double ball_anchor =
                std::pow(ball.volume(), 2) * pc.polar_volume(surface_area_measure(ball));
            double worst = std::numeric_limits<double>::infinity();
            int exp_trials = std::min(cfg.trials, 50);
            for (int trial = 0; trial < exp_trials; ++trial) {
                std::uint64_t s = detail::trial_seed(cfg.seed, "experiment-" + op, trial);
                auto [K, L] = detail::random_pair(s, false, *grid);
                double v = std::pow(K.volume(), 2) * pc.polar_volume(surface_area_measure(K));
                worst = std::min(worst, ball_anchor / v);
            }
            report.experiments["volume-product-ratio-min-" + op] = worst;
        } catch (const std::exception&) {
            report.experiments["volume-product-ratio-min-" + op] =
                std::numeric_limits<double>::quiet_NaN();
        }
    }
    return report;
}

}  // namespace cbh
