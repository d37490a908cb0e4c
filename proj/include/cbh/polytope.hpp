#pragma once

#include <vector>

#include "grid.hpp"
#include "hull3d.hpp"

namespace cbh {

/// Full-dimensional convex polytope, stored as the vertex set of its hull.
class Polytope {
  public:
    Polytope() = default;

    explicit Polytope(std::vector<Vector3d> points) {
        Hull3D h = compute_hull(points);
        vertices_ = h.vertices();
        volume_ = h.volume();
        area_ = h.surface_area();
        if (volume_ <= 0.0) throw HullError("polytope: nonpositive volume");
    }

    int dim() const { return 3; }
    const std::vector<Vector3d>& vertices() const { return vertices_; }
    double volume() const { return volume_; }
    double surface_area() const { return area_; }

    double support(const Vector3d& u) const {
        double h = -std::numeric_limits<double>::infinity();
        for (const auto& v : vertices_) h = std::max(h, u.dot(v));
        return h;
    }

  private:
    std::vector<Vector3d> vertices_;
    double volume_ = 0.0;
    double area_ = 0.0;
};

inline double support_function(const Polytope& p, const Vector3d& u) {
    return p.support(u);
}

inline Polytope translate(const Polytope& p, const Vector3d& t) {
    std::vector<Vector3d> vs = p.vertices();
    for (auto& v : vs) v += t;
    return Polytope(std::move(vs));
}

inline Polytope dilate(const Polytope& p, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("dilate: lambda > 0 required");
    std::vector<Vector3d> vs = p.vertices();
    for (auto& v : vs) v *= lambda;
    return Polytope(std::move(vs));
}

inline Polytope rotate(const Polytope& p, const Matrix3d& R) {
    if (!is_rotation(R)) throw std::invalid_argument("rotate: matrix is not a rotation");
    std::vector<Vector3d> vs = p.vertices();
    for (auto& v : vs) v = R * v;
    return Polytope(std::move(vs));
}

/// Minkowski linear combination l1*K + l2*L as the hull of pairwise sums.
inline Polytope minkowski_sum(const Polytope& K, const Polytope& L, double l1 = 1.0,
                              double l2 = 1.0) {
    if (l1 < 0.0 || l2 < 0.0) throw std::invalid_argument("minkowski_sum: negative weight");
    if (l1 == 0.0 && l2 == 0.0) throw std::invalid_argument("minkowski_sum: both weights zero");
    if (l1 == 0.0) return dilate(L, l2);
    if (l2 == 0.0) return dilate(K, l1);
    std::vector<Vector3d> pts;
    pts.reserve(K.vertices().size() * L.vertices().size());
    for (const auto& a : K.vertices())
        for (const auto& b : L.vertices()) pts.push_back(l1 * a + l2 * b);
    return Polytope(std::move(pts));
}

/// Steiner point s(K) = (1/kappa_n) ∫ h(K,u) u du, evaluated on the grid.
template <typename SupportFn>
inline Vector3d steiner_point_of(const SphericalGrid& g, SupportFn&& h) {
    Vector3d s = Vector3d::Zero();
    for (std::size_t i = 0; i < g.size(); ++i)
        s += g.weights[i] * h(g.nodes3[i]) * g.nodes3[i];
    return s / unit_ball_volume(3);
}

inline Vector3d steiner_point(const Polytope& p, const SphericalGrid& g) {
    return steiner_point_of(g, [&](const Vector3d& u) { return p.support(u); });
}

inline Polytope steiner_center(const Polytope& p, const SphericalGrid& g) {
    return translate(p, -steiner_point(p, g));
}

/// Deterministic random polytope: hull of k points in the unit ball,
/// re-centered at its Steiner point.
inline Polytope random_polytope(std::uint64_t seed, int k, const SphericalGrid& g) {
    if (k < 4) throw std::invalid_argument("random_polytope: k >= n+1 required");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Vector3d> pts;
        pts.reserve(k);
        for (int i = 0; i < k; ++i) pts.push_back(random_ball_point(rng));
        try {
            Polytope p(std::move(pts));
            if (p.volume() < 1e-10) continue;
            return steiner_center(p, g);
        } catch (const HullError&) {
        }
    }
    throw std::runtime_error("random_polytope: degenerate after 100 attempts");
}

/// Axis-aligned cube [-a,a]^3.
inline Polytope cube(double a = 1.0) {
    std::vector<Vector3d> vs;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) vs.emplace_back(sx * a, sy * a, sz * a);
    return Polytope(std::move(vs));
}

/// Polytope inscribed in the unit sphere with vertices at the grid nodes.
/// Standard ball approximant; its volume deficit is the calibration constant
/// quoted in the tolerance budgets.
inline Polytope ball_polytope(const SphericalGrid& g) {
    return Polytope(std::vector<Vector3d>(g.nodes3.begin(), g.nodes3.end()));
}

}  // namespace cbh
