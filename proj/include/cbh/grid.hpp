#pragma once

#include <concepts>
#include <functional>
#include <memory>
#include <vector>

#include "gauss.hpp"
#include "geometry.hpp"

namespace cbh {

/// Quadrature grid on S^{n-1}, antipodally symmetric, weights sum to the
/// surface area. For n == 3 the nodes carry a structured (t, phi) layout:
/// node index = it * n_phi + ip with t = cos(polar angle) ascending.
struct SphericalGrid {
    int dim = 3;
    int resolution = 0;
    std::vector<VectorXd> nodes;
    std::vector<double> weights;

    // structured layout, n == 3 only
    int n_t = 0;
    int n_phi = 0;
    std::vector<double> t_nodes;
    std::vector<Vector3d> nodes3;

    std::size_t size() const { return nodes.size(); }

    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

using GridPtr = std::shared_ptr<const SphericalGrid>;

namespace detail {

/// Polar-coordinate t nodes: two mirrored Gauss-Legendre panels with the
/// seam at t = 0, so |t|-type kernels are integrated on smooth pieces.
inline void mirrored_panels(int per_panel, std::vector<double>& t, std::vector<double>& w) {
    std::vector<double> xp, wp;
    gauss_legendre_ab(per_panel, 0.0, 1.0, xp, wp);
    t.clear();
    w.clear();
    for (int i = per_panel - 1; i >= 0; --i) {
        t.push_back(-xp[i]);
        w.push_back(wp[i]);
    }
    for (int i = 0; i < per_panel; ++i) {
        t.push_back(xp[i]);
        w.push_back(wp[i]);
    }
}

inline SphericalGrid build_sphere_grid(int dim, int resolution);

/// S^1: uniform angles, exact for trigonometric polynomials of degree < m.
inline SphericalGrid build_circle_grid(int resolution) {
    SphericalGrid g;
    g.dim = 2;
    g.resolution = resolution;
    const int m = 8 * resolution;
    for (int j = 0; j < m; ++j) {
        double phi = 2.0 * pi() * j / m;
        VectorXd u(2);
        u << std::cos(phi), std::sin(phi);
        g.nodes.push_back(u);
        g.weights.push_back(2.0 * pi() / m);
    }
    return g;
}

inline SphericalGrid build_sphere_grid(int dim, int resolution) {
    if (dim == 2) return build_circle_grid(resolution);
    SphericalGrid sub = build_sphere_grid(dim - 1, resolution);
    std::vector<double> t, wt;
    mirrored_panels(2 * resolution, t, wt);

    SphericalGrid g;
    g.dim = dim;
    g.resolution = resolution;
    for (std::size_t it = 0; it < t.size(); ++it) {
        double s = std::sqrt(std::max(0.0, 1.0 - t[it] * t[it]));
        double jac = std::pow(1.0 - t[it] * t[it], 0.5 * (dim - 3));
        for (std::size_t k = 0; k < sub.size(); ++k) {
            VectorXd u(dim);
            u.head(dim - 1) = s * sub.nodes[k];
            u[dim - 1] = t[it];
            g.nodes.push_back(u);
            g.weights.push_back(wt[it] * jac * sub.weights[k]);
        }
    }
    if (dim == 3) {
        g.n_t = static_cast<int>(t.size());
        g.n_phi = static_cast<int>(sub.size());
        g.t_nodes = t;
        // reorder so node index = it * n_phi + ip (already the case)
        g.nodes3.reserve(g.size());
        for (const auto& u : g.nodes) g.nodes3.emplace_back(u[0], u[1], u[2]);
    }
    return g;
}

}  // namespace detail

inline GridPtr build_grid(int dim, int resolution) {
    if (dim < 3) throw std::invalid_argument("build_grid: dim >= 3 required");
    if (resolution < 1) throw std::invalid_argument("build_grid: resolution >= 1 required");
    return std::make_shared<const SphericalGrid>(detail::build_sphere_grid(dim, resolution));
}

inline double integrate(const SphericalGrid& g, const VectorXd& field) {
    if (static_cast<std::size_t>(field.size()) != g.size())
        throw std::invalid_argument("integrate: field size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * field[i];
    return s;
}

template <typename F>
    requires requires(F& f, const Vector3d& u) { { f(u) } -> std::convertible_to<double>; } ||
             requires(F& f, const VectorXd& u) { { f(u) } -> std::convertible_to<double>; }
inline double integrate(const SphericalGrid& g, F&& f) {
    double s = 0.0;
    if (g.dim == 3) {
        for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * f(g.nodes3[i]);
    } else {
        for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * f(g.nodes[i]);
    }
    return s;
}

}  // namespace cbh
