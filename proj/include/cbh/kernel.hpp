#pragma once

#include <functional>
#include <string>
#include <utility>

#include "gauss.hpp"
#include "geometry.hpp"

namespace cbh {

/// Zonal function on S^{n-1}: profile g(t) of t = u . pole, plus an optional
/// point mass spread uniformly over the equator S^{n-1} ∩ pole^⊥.
struct ZonalKernel {
    std::function<double(double)> profile;
    double equator_atom = 0.0;
    bool even = false;
    bool is_support = false;
    std::string name;

    double operator()(double t) const { return profile(t); }
};

/// Generating kernel of the projection body: half the support function of
/// the segment [-pole, pole].
inline ZonalKernel projection_kernel() {
    ZonalKernel k;
    k.profile = [](double t) { return 0.5 * std::abs(t); };
    k.even = true;
    k.is_support = true;
    k.name = "pi";
    return k;
}

/// Sine-transform kernel: support function of the unit disc in pole^⊥.
inline ZonalKernel disc_kernel() {
    ZonalKernel k;
    k.profile = [](double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); };
    k.even = true;
    k.is_support = true;
    k.name = "theta";
    return k;
}

/// Odd profile g(t) = t; not a valid generating function of an even operator.
/// Shipped as the suite's deliberate negative control.
inline ZonalKernel odd_control_kernel() {
    ZonalKernel k;
    k.profile = [](double t) { return t; };
    k.even = true;  // intentionally mislabeled
    k.is_support = true;
    k.name = "odd-control";
    return k;
}

/// ∫_{S^{n-1}} g(u . e) du computed as a 1D weighted integral over t with the
/// (1-t^2)^{(n-3)/2} jacobian; panels split at t = 0 where |t| kernels kink.
inline double kernel_sphere_integral(const ZonalKernel& k, int n = 3, int panel_nodes = 200) {
    std::vector<double> x, w;
    double s = 0.0;
    const double subsphere = sphere_surface_area(n - 1);
    for (int panel = 0; panel < 2; ++panel) {
        gauss_legendre_ab(panel_nodes, panel == 0 ? -1.0 : 0.0, panel == 0 ? 0.0 : 1.0, x, w);
        for (int i = 0; i < panel_nodes; ++i)
            s += w[i] * k.profile(x[i]) * std::pow(1.0 - x[i] * x[i], 0.5 * (n - 3));
    }
    return subsphere * s + k.equator_atom * 0.0;
}

/// Zonal measure on S^{n-1}: a density profile m(t) >= 0 plus a nonnegative
/// mass spread invariantly over the equator. Generating data of radial
/// Blaschke-Minkowski homomorphisms.
struct ZonalMeasure {
    std::function<double(double)> density;  // may be empty (pure atom)
    double equator_mass = 0.0;
    std::string name;

    bool has_density() const { return static_cast<bool>(density); }
};

/// The intersection body's generating measure: the invariant measure on the
/// equatorial great subsphere with total mass kappa_{n-1}.
inline ZonalMeasure intersection_measure(int n = 3) {
    ZonalMeasure m;
    m.equator_mass = unit_ball_volume(n - 1);
    m.name = "intersection";
    return m;
}

}  // namespace cbh
