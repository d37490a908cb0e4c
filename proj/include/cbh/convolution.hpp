#pragma once

#include <map>
#include <mutex>

#include "grid.hpp"
#include "kernel.hpp"
#include "measure.hpp"

namespace cbh {

namespace detail {

/// Mirrored Gauss-Legendre panels, cached per size (node solves are not free
/// and the band rule is called once per evaluation point).
inline const std::pair<std::vector<double>, std::vector<double>>& cached_panels(int per_panel) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(per_panel);
    if (it == cache.end()) {
        std::pair<std::vector<double>, std::vector<double>> tw;
        mirrored_panels(per_panel, tw.first, tw.second);
        it = cache.emplace(per_panel, std::move(tw)).first;
    }
    return it->second;
}

}  // namespace detail

/// Convolution of an atomic measure with a zonal profile, evaluated at u:
/// (mu * g)(u) = sum_a w_a g(u . d_a). Exact, no quadrature.
inline double convolve_at(const AtomicMeasure& m, const ZonalKernel& k, const Vector3d& u) {
    if (k.equator_atom != 0.0)
        throw std::invalid_argument("convolve_at: kernel equator atom unsupported");
    double s = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a) s += m.weights[a] * k.profile(u.dot(m.dirs[a]));
    return s;
}

inline VectorXd zonal_convolve(const SphericalGrid& g, const AtomicMeasure& m,
                               const ZonalKernel& k) {
    VectorXd out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = convolve_at(m, k, g.nodes3[i]);
    return out;
}

/// Band quadrature of ∫_{S^2} f(v) g(axis . v) dv in a frame aligned with
/// axis: Gauss-Legendre panels in t seamed at t = 0 (so |t|-type profiles
/// are smooth per panel) times a uniform azimuth rule.
template <typename F>
inline double integrate_zonal_product(F&& f, const std::function<double(double)>& profile,
                                      const Vector3d& axis, int per_panel = 24,
                                      int n_phi = 64) {
    const Matrix3d R = rotation_to_axis(axis);
    const auto& [t, wt] = detail::cached_panels(per_panel);
    const double dphi = 2.0 * pi() / n_phi;
    double total = 0.0;
    for (std::size_t it = 0; it < t.size(); ++it) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t[it] * t[it]));
        const double gt = profile(t[it]);
        if (gt == 0.0) continue;
        double ring = 0.0;
        for (int ip = 0; ip < n_phi; ++ip) {
            double phi = dphi * ip;
            ring += f(R * Vector3d(s * std::cos(phi), s * std::sin(phi), t[it]));
        }
        total += wt[it] * gt * dphi * ring;
    }
    return total;
}

/// Arc-length integral of f over the great circle orthogonal to axis.
template <typename F>
inline double great_circle_integral(F&& f, const Vector3d& axis, int n_phi = 128) {
    const Matrix3d R = rotation_to_axis(axis);
    const double dphi = 2.0 * pi() / n_phi;
    double s = 0.0;
    for (int ip = 0; ip < n_phi; ++ip) {
        double phi = dphi * ip;
        s += f(R * Vector3d(std::cos(phi), std::sin(phi), 0.0));
    }
    return s * dphi;
}

/// Convolution of a function with a zonal measure at u: density part by band
/// quadrature plus the equator mass spread over the great circle u^⊥.
template <typename F>
inline double radial_convolve_at(F&& f, const ZonalMeasure& m, const Vector3d& u,
                                 int per_panel = 24, int n_phi = 64) {
    double s = 0.0;
    if (m.has_density()) s += integrate_zonal_product(f, m.density, u, per_panel, n_phi);
    if (m.equator_mass != 0.0)
        s += m.equator_mass / (2.0 * pi()) * great_circle_integral(f, u, 2 * n_phi);
    return s;
}

}  // namespace cbh
