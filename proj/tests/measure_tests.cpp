#include <catch_amalgamated.hpp>

#include <cbh/cbh.hpp>

using namespace cbh;

TEST_CASE("surface area measure of the cube") {
    AtomicMeasure m = surface_area_measure(cube(1.0));
    REQUIRE(m.size() == 6);
    REQUIRE(m.mass() == Catch::Approx(24.0).epsilon(1e-13));
    REQUIRE(m.centroid().norm() < 1e-12);
    for (std::size_t i = 0; i < m.size(); ++i) {
        REQUIRE(m.weights[i] == Catch::Approx(4.0).epsilon(1e-13));
        // every direction is a signed coordinate axis
        REQUIRE(m.dirs[i].cwiseAbs().maxCoeff() == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("surface area measure matches the surface area on random hulls") {
    auto g = build_grid(3, 4);
    for (std::uint64_t s : {1, 2, 3}) {
        Polytope P = random_polytope(s, 12, *g);
        AtomicMeasure m = surface_area_measure(P);
        REQUIRE(m.mass() == Catch::Approx(P.surface_area()).epsilon(1e-10));
        REQUIRE(m.centroid().norm() < 1e-9 * m.mass());
    }
}

TEST_CASE("merge_atoms collapses duplicates and applies the floor") {
    AtomicMeasure m;
    m.push(Vector3d::UnitX(), 1.0);
    m.push((Vector3d::UnitX() + 1e-12 * Vector3d::UnitY()).normalized(), 2.0);
    m.push(Vector3d::UnitY(), 1e-15);
    AtomicMeasure out = merge_atoms(m, 1e-10, 1e-12);
    REQUIRE(out.size() == 1);
    REQUIRE(out.weights[0] == Catch::Approx(3.0));
}

TEST_CASE("combine scales and merges") {
    AtomicMeasure a, b;
    a.push(Vector3d::UnitX(), 1.0);
    a.push(Vector3d::UnitY(), 2.0);
    b.push(Vector3d::UnitX(), 3.0);
    AtomicMeasure c = combine(a, b, 2.0, 1.0);
    REQUIRE(c.size() == 2);
    REQUIRE(c.mass() == Catch::Approx(9.0));
}

TEST_CASE("mixed measure polarization on a cube pair") {
    // S(K,K) = S(K)
    Polytope c = cube(1.0);
    AtomicMeasure m = mixed_surface_area_measure(c, c);
    REQUIRE(m.mass() == Catch::Approx(24.0).epsilon(1e-10));
    // thin slab against the unit cube, checked against the hull oracle and
    // the Steiner-type expansion coefficient
    std::vector<Vector3d> sv;
    double eps = 1e-3;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y)
            for (int z = 0; z <= 1; ++z) sv.emplace_back(x, y, z * eps);
    Polytope slab(sv);
    Polytope unit = translate(dilate(c, 0.5), Vector3d(0.5, 0.5, 0.5));
    AtomicMeasure mix = mixed_surface_area_measure(unit, slab);
    double v = mixed_volume_against([&](const Vector3d& u) { return unit.support(u); }, mix);
    REQUIRE(v == Catch::Approx(mixed_volume(unit, unit, slab)).epsilon(1e-9));
    // (1+t)^2 (1+t*eps) expands with first-order coefficient 2+eps
    REQUIRE(v == Catch::Approx((2.0 + eps) / 3.0).epsilon(1e-9));
}

TEST_CASE("mixed measure agrees with the hull oracle on random pairs") {
    auto g = build_grid(3, 4);
    for (std::uint64_t s : {7, 8}) {
        Polytope K = random_polytope(s, 9, *g), L = random_polytope(s + 40, 11, *g);
        AtomicMeasure mix = mixed_surface_area_measure(K, L);
        for (std::uint64_t q : {20, 21}) {
            Polytope Q = random_polytope(q, 8, *g);
            double lhs = mixed_volume_against(
                [&](const Vector3d& u) { return Q.support(u); }, mix);
            REQUIRE(lhs == Catch::Approx(mixed_volume(Q, K, L)).epsilon(1e-8));
        }
    }
}

TEST_CASE("minkowski data validation rejects bad inputs") {
    AtomicMeasure ok = surface_area_measure(cube(1.0));
    REQUIRE_NOTHROW(validate_minkowski_data(ok));

    AtomicMeasure few;
    few.push(Vector3d::UnitX(), 1.0);
    few.push(-Vector3d::UnitX(), 1.0);
    REQUIRE_THROWS_AS(validate_minkowski_data(few), std::invalid_argument);

    AtomicMeasure neg = ok;
    neg.weights[0] = -1.0;
    REQUIRE_THROWS_AS(validate_minkowski_data(neg), std::invalid_argument);

    AtomicMeasure skew = ok;
    skew.weights[0] = 5.0;  // breaks the centroid
    REQUIRE_THROWS_AS(validate_minkowski_data(skew), std::invalid_argument);

    AtomicMeasure nonunit = ok;
    nonunit.dirs[0] *= 1.1;
    REQUIRE_THROWS_AS(validate_minkowski_data(nonunit), std::invalid_argument);

    // all directions on the equator: concentrated on a great circle
    AtomicMeasure flat;
    flat.push(Vector3d::UnitX(), 1.0);
    flat.push(-Vector3d::UnitX(), 1.0);
    flat.push(Vector3d::UnitY(), 1.0);
    flat.push(-Vector3d::UnitY(), 1.0);
    REQUIRE_THROWS_AS(validate_minkowski_data(flat), std::invalid_argument);
}

TEST_CASE("measure json round trips") {
    AtomicMeasure m = surface_area_measure(cube(2.0));
    AtomicMeasure back = measure_from_json(to_json(m));
    REQUIRE(back.size() == m.size());
    REQUIRE(back.mass() == Catch::Approx(m.mass()).epsilon(1e-14));
}
