#include <catch_amalgamated.hpp>

#include <cbh/cbh.hpp>

using namespace cbh;

namespace {

PrimalCtx make_primal(const ZonalKernel& k, GridPtr g) {
    return PrimalCtx{k, g, ball_polytope(*g)};
}

void require_all(const CheckList& cs) {
    for (const auto& c : cs) {
        INFO(c.id << " margin=" << c.margin);
        REQUIRE(c.passed());
    }
}

}  // namespace

TEST_CASE("mixed-image inequalities hold on random polytopes") {
    auto g = build_grid(3, 6);
    for (const auto& k : {projection_kernel(), disc_kernel()}) {
        PrimalCtx c = make_primal(k, g);
        for (std::uint64_t s : {401, 402}) {
            Polytope K = random_polytope(s, 9, *g), L = random_polytope(s + 70, 10, *g);
            require_all(check_minkowski_bm(c, K, L));
            require_all(check_af_bm(c, K, L));
            require_all(check_cor_product(c, K, L));
            require_all(check_cor_phi_j(c, K, L));
            require_all(check_bm_bm(c, K, L));
        }
    }
}

TEST_CASE("polar-image inequalities hold on random polytopes") {
    auto g = build_grid(3, 6);
    for (const auto& k : {projection_kernel(), disc_kernel()}) {
        PrimalCtx c = make_primal(k, g);
        Polytope K = random_polytope(411, 10, *g), L = random_polytope(412, 9, *g);
        require_all(CheckList{check_polar_minkowski(c, K, L)});
        require_all(check_polar_af(c, K, L));
        require_all(CheckList{check_polar_cor(c, K, L)});
        require_all(CheckList{check_polar_bm(c, K, L)});
    }
}

TEST_CASE("polar track rejects the odd control kernel") {
    auto g = build_grid(3, 6);
    ZonalKernel odd = odd_control_kernel();
    odd.even = false;  // honest labeling here
    PrimalCtx c = make_primal(odd, g);
    Polytope K = cube(1.0);
    REQUIRE_THROWS_AS(check_polar_minkowski(c, K, K), std::invalid_argument);
}

TEST_CASE("equality cases are recognized") {
    auto g = build_grid(3, 6);
    PrimalCtx c = make_primal(projection_kernel(), g);
    Polytope K = random_polytope(421, 10, *g);
    Polytope L = translate(dilate(K, 1.4), Vector3d(0.2, -0.1, 0.3));
    require_all(check_minkowski_bm(c, K, L, true));
    require_all(check_cor_product(c, K, L, true));
    require_all(check_bm_bm(c, K, L, true));
    require_all(CheckList{check_polar_bm(c, K, L, true)});
}

TEST_CASE("margins are scale invariant") {
    auto g = build_grid(3, 6);
    PrimalCtx c = make_primal(projection_kernel(), g);
    Polytope K = random_polytope(431, 9, *g), L = random_polytope(432, 11, *g);
    CheckList a = check_minkowski_bm(c, K, L);
    CheckList b = check_minkowski_bm(c, dilate(K, 2.0), dilate(L, 2.0));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        REQUIRE(a[i].margin == Catch::Approx(b[i].margin).margin(1e-8));
}

TEST_CASE("dual inequalities hold on random star bodies") {
    auto g = build_grid(3, 6);
    DualCtx c{intersection_measure(3), g};
    for (std::uint64_t s : {441, 442}) {
        StarBody K = random_star_body(s, 3, g), L = random_star_body(s + 30, 3, g);
        require_all(check_dual_af(c, K, L, 1));
        require_all(check_dual_af(c, K, L, 2));
        require_all(check_dual_cor(c, K, L));
        require_all(check_dual_bm(c, K, L));
    }
    // equality for dilates
    StarBody K = random_star_body(443, 3, g);
    StarBody L = dilate(K, 1.3);
    require_all(check_dual_cor(c, K, L, true));
    require_all(check_dual_bm(c, K, L, true));
}

TEST_CASE("adjointness identities hold") {
    auto g = build_grid(3, 6);
    for (const auto& k : {projection_kernel(), disc_kernel()}) {
        PrimalCtx c = make_primal(k, g);
        Polytope K = random_polytope(451, 9, *g), L = random_polytope(452, 10, *g);
        require_all(check_lemma_wij(c, K, L));
        require_all(check_lemma_wn1(c, K));
        StarBody S = random_star_body(453, 3, g);
        require_all(CheckList{check_lemma_polar_mphi(c, S, K, L)});
    }
    DualCtx d{intersection_measure(3), g};
    StarBody A = random_star_body(454, 3, g), B = random_star_body(455, 3, g);
    require_all(check_lemma_dual_wij(d, A, B));
    require_all(check_lemma_dual_wn1(d, A));
}

TEST_CASE("odd control kernel produces violations") {
    auto g = build_grid(3, 6);
    PrimalCtx c = make_primal(odd_control_kernel(), g);
    int failures = 0;
    for (std::uint64_t s : {461, 462, 463}) {
        Polytope K = random_polytope(s, 10, *g), L = random_polytope(s + 15, 9, *g);
        try {
            for (const auto& ch : check_minkowski_bm(c, K, L))
                if (!ch.passed()) ++failures;
            for (const auto& ch : check_lemma_wn1(c, K))
                if (!ch.passed()) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    REQUIRE(failures > 0);
}

TEST_CASE("check bookkeeping") {
    TheoremCheck good = detail::ge_check("x", 2.0, 1.0, false, 1e-6, "exact");
    REQUIRE(good.passed());
    REQUIRE(good.margin == Catch::Approx(0.5));
    TheoremCheck bad = detail::ge_check("x", 1.0, 2.0, false, 1e-6, "exact");
    REQUIRE_FALSE(bad.passed());
    TheoremCheck eq = detail::eq_check("x", 1.0, 1.0 + 1e-5, 1e-4, "quadrature");
    REQUIRE(eq.passed());
    TheoremCheck neq = detail::eq_check("x", 1.0, 1.1, 1e-4, "quadrature");
    REQUIRE_FALSE(neq.passed());
    TheoremCheck nan = detail::ge_check("x", 0.0, 0.0, false, 1e-6, "exact");
    REQUIRE_FALSE(nan.passed());
}
