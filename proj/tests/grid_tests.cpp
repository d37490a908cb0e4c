#include <catch_amalgamated.hpp>

#include <cbh/cbh.hpp>

using namespace cbh;

TEST_CASE("grid weights sum to the sphere area") {
    for (int r : {1, 2, 6, 10}) {
        auto g = build_grid(3, r);
        REQUIRE(g->total_weight() == Catch::Approx(4.0 * pi()).epsilon(1e-13));
    }
}

TEST_CASE("grid layout is structured") {
    auto g = build_grid(3, 6);
    REQUIRE(g->n_t == 24);
    REQUIRE(g->n_phi == 48);
    REQUIRE(g->size() == static_cast<std::size_t>(g->n_t * g->n_phi));
    // node index = it * n_phi + ip with z = t_nodes[it]
    for (int it = 0; it < g->n_t; ++it)
        for (int ip = 0; ip < g->n_phi; ++ip)
            REQUIRE(g->nodes3[it * g->n_phi + ip].z() == Catch::Approx(g->t_nodes[it]).margin(1e-15));
}

TEST_CASE("polynomial moments are machine exact") {
    auto g = build_grid(3, 6);
    double m2 = integrate(*g, [](const Vector3d& u) { return u.z() * u.z(); });
    REQUIRE(m2 == Catch::Approx(4.0 * pi() / 3.0).epsilon(1e-13));
    double m2x = integrate(*g, [](const Vector3d& u) { return u.x() * u.x(); });
    REQUIRE(m2x == Catch::Approx(4.0 * pi() / 3.0).epsilon(1e-13));
    double m4 = integrate(*g, [](const Vector3d& u) { return std::pow(u.z(), 4); });
    REQUIRE(m4 == Catch::Approx(4.0 * pi() / 5.0).epsilon(1e-13));
    double modd = integrate(*g, [](const Vector3d& u) { return u.z(); });
    REQUIRE(std::abs(modd) < 1e-14);
}

TEST_CASE("axis-aligned kink integrals are exact, off-axis within budget") {
    auto g = build_grid(3, 6);
    // panels are seamed at t = 0, so |u . e3| integrates exactly
    double on_axis = integrate(*g, [](const Vector3d& u) { return std::abs(u.z()); });
    REQUIRE(on_axis == Catch::Approx(2.0 * pi()).epsilon(1e-13));
    Vector3d d = Vector3d(1.0, 2.0, 3.0).normalized();
    double off_axis = integrate(*g, [&](const Vector3d& u) { return std::abs(u.dot(d)); });
    REQUIRE(off_axis == Catch::Approx(2.0 * pi()).epsilon(3e-4));
    // the budget tightens with resolution
    auto g12 = build_grid(3, 12);
    double off12 = integrate(*g12, [&](const Vector3d& u) { return std::abs(u.dot(d)); });
    REQUIRE(off12 == Catch::Approx(2.0 * pi()).epsilon(1e-4));
}

TEST_CASE("grid construction rejects bad arguments") {
    REQUIRE_THROWS_AS(build_grid(2, 6), std::invalid_argument);
    REQUIRE_THROWS_AS(build_grid(3, 0), std::invalid_argument);
}

TEST_CASE("field interpolation is exact on constants and at nodes") {
    auto g = build_grid(3, 4);
    VectorXd ones = VectorXd::Ones(g->size());
    StarBody b{g, ones, nullptr};
    REQUIRE(b.eval(Vector3d(0.3, -0.4, 0.87).normalized()) == Catch::Approx(1.0).epsilon(1e-14));
    VectorXd f(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) f[i] = 2.0 + g->nodes3[i].x();
    StarBody c{g, f, nullptr};
    for (std::size_t i : {std::size_t(0), g->size() / 3, g->size() - 1})
        REQUIRE(c.eval(g->nodes3[i]) == Catch::Approx(f[i]).margin(1e-12));
}

TEST_CASE("kernel sphere integrals match the closed forms") {
    REQUIRE(kernel_sphere_integral(projection_kernel()) == Catch::Approx(pi()).epsilon(1e-12));
    // the disc profile has a square-root endpoint singularity, so the panel
    // rule converges slower than for the piecewise-polynomial kernels
    REQUIRE(kernel_sphere_integral(disc_kernel()) == Catch::Approx(pi() * pi()).epsilon(1e-7));
    REQUIRE(std::abs(kernel_sphere_integral(odd_control_kernel())) < 1e-12);
}

TEST_CASE("band quadrature integrates a zonal product") {
    // ∫ f(v) g(e3 . v) dv with f = 1: reduces to the kernel integral
    auto one = [](const Vector3d&) { return 1.0; };
    double v = integrate_zonal_product(one, projection_kernel().profile, Vector3d::UnitZ());
    REQUIRE(v == Catch::Approx(pi()).epsilon(1e-12));
    Vector3d axis = Vector3d(2.0, -1.0, 0.5).normalized();
    double w = integrate_zonal_product(one, disc_kernel().profile, axis);
    REQUIRE(w == Catch::Approx(pi() * pi()).epsilon(1e-4));
}

TEST_CASE("great circle integral") {
    double c = great_circle_integral([](const Vector3d&) { return 1.0; }, Vector3d::UnitX());
    REQUIRE(c == Catch::Approx(2.0 * pi()).epsilon(1e-14));
    // f = z^2 over the circle orthogonal to x: mean 1/2
    double z2 = great_circle_integral([](const Vector3d& v) { return v.z() * v.z(); },
                                      Vector3d::UnitX());
    REQUIRE(z2 == Catch::Approx(pi()).epsilon(1e-12));
}
