#pragma once

#include "convolution.hpp"
#include "fields.hpp"
#include "volumes.hpp"

namespace cbh {

/// ---- Minkowski-additive operators generated by zonal convolution --------
///
/// An even zonal profile g that is a support function generates an operator
/// K -> Phi K through h(Phi K, u) = (S(K) * g)(u). The image of a polytope
/// has an exact evaluator (a finite sum), no quadrature involved.

inline SupportBody apply_zonal(const AtomicMeasure& m, const ZonalKernel& k, GridPtr grid) {
    AtomicMeasure mm = m;
    ZonalKernel kk = k;
    return make_support_body(std::move(grid), [mm, kk](const Vector3d& u) {
        return convolve_at(mm, kk, u);
    });
}

inline SupportBody apply_bm(const Polytope& K, const ZonalKernel& k, GridPtr grid) {
    return apply_zonal(surface_area_measure(K), k, std::move(grid));
}

/// Mixed operator image Phi(K, L): the convolution applied to the mixed
/// surface area measure S(K, L; .).
inline SupportBody apply_bm_mixed(const Polytope& K, const Polytope& L, const ZonalKernel& k,
                                  GridPtr grid) {
    return apply_zonal(mixed_surface_area_measure(K, L), k, std::move(grid));
}

/// Derived operator Phi_i K: the convolution applied to the i-th area
/// measure, with the unit ball consistently replaced by `ball`.
/// i = 0 gives Phi itself; i ranges over 0..1 in R^3.
inline AtomicMeasure area_measure(const Polytope& K, int i, const Polytope& ball) {
    switch (i) {
        case 0: return surface_area_measure(K);
        case 1: return mixed_surface_area_measure(K, ball);
        case 2: return surface_area_measure(ball);
        default: throw std::invalid_argument("area_measure: i in 0..2 required");
    }
}

/// ∫ g(u . e) du, the proportionality constant in W_{n-1}(Phi_i K) =
/// r_g W_{i+1}(K).
inline double kernel_constant(const ZonalKernel& k) { return kernel_sphere_integral(k, 3); }

/// W_2 of a convolution image is exact: (1/3) ∫ (m * g) du = r_g mass(m)/3.
inline double w2_of_image(const AtomicMeasure& m, const ZonalKernel& k) {
    return kernel_constant(k) * m.mass() / 3.0;
}

/// ---- Zonotope fast path for the projection-type kernel -------------------
///
/// With g(t) = |t|/2 the image of a measure with atoms (d_a, w_a) is the
/// zonotope sum_a [-g_a, g_a], g_a = (w_a / 2) d_a. Volume and surface area
/// measure then have closed forms; no hull or quadrature error.

struct Zonotope {
    std::vector<Vector3d> generators;

    double support(const Vector3d& u) const {
        double s = 0.0;
        for (const auto& g : generators) s += std::abs(u.dot(g));
        return s;
    }
};

inline Zonotope zonotope_of(const AtomicMeasure& m) {
    Zonotope z;
    z.generators.reserve(m.size());
    for (std::size_t a = 0; a < m.size(); ++a) z.generators.push_back(0.5 * m.weights[a] * m.dirs[a]);
    return z;
}

inline double zonotope_volume(const Zonotope& z) {
    const auto& g = z.generators;
    double v = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            Vector3d cij = g[i].cross(g[j]);
            for (std::size_t k = j + 1; k < g.size(); ++k) v += std::abs(cij.dot(g[k]));
        }
    return 8.0 * v;
}

inline double zonotope_surface_area(const Zonotope& z) {
    const auto& g = z.generators;
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) s += g[i].cross(g[j]).norm();
    return 8.0 * s;
}

inline AtomicMeasure zonotope_surface_measure(const Zonotope& z) {
    const auto& g = z.generators;
    AtomicMeasure m;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            Vector3d c = g[i].cross(g[j]);
            double a = c.norm();
            if (a < 1e-16) continue;
            Vector3d n = c / a;
            m.push(n, 4.0 * a);
            m.push(-n, 4.0 * a);
        }
    return merge_atoms(m, 1e-9);
}

inline Zonotope projection_body(const Polytope& K) {
    return zonotope_of(surface_area_measure(K));
}

/// W_i of a convolution image under kernel k. Projection-type kernels use
/// the exact zonotope formulas; other kernels fall back to the
/// circumscribed-polytope conversion for W_0 and W_1. W_2 is always exact.
inline double w_of_image(const AtomicMeasure& m, const ZonalKernel& k, int i,
                         const SphericalGrid& grid) {
    if (i == 2) return w2_of_image(m, k);
    if (i == 3) return unit_ball_volume(3);
    if (i != 0 && i != 1) throw std::invalid_argument("w_of_image: i in 0..3 required");
    if (k.name == "pi") {
        Zonotope z = zonotope_of(m);
        return i == 0 ? zonotope_volume(z) : zonotope_surface_area(z) / 3.0;
    }
    // plain conversion (no cutting rounds): image support functions are
    // smooth, so the circumscription bias is small and the speed matters here
    Polytope p = support_to_polytope(
        grid, [&](const Vector3d& u) { return convolve_at(m, k, u); }, 0);
    return i == 0 ? p.volume() : p.surface_area() / 3.0;
}

/// ---- Radial operators generated by zonal measures ------------------------

inline StarBody apply_radial(const StarBody& L, const ZonalMeasure& m, int per_panel = 24,
                             int n_phi = 64) {
    StarBody src = L;
    ZonalMeasure mm = m;
    auto f = [src](const Vector3d& v) {
        double r = src.eval(v);
        return r * r;
    };
    return make_star_body(L.grid, [f, mm, per_panel, n_phi](const Vector3d& u) {
        return radial_convolve_at(f, mm, u, per_panel, n_phi);
    });
}

/// Mixed radial image Psi(L1, L2): the convolution applied to the product
/// rho(L1) rho(L2).
inline StarBody apply_radial_mixed(const StarBody& L1, const StarBody& L2, const ZonalMeasure& m,
                                   int per_panel = 24, int n_phi = 64) {
    StarBody a = L1, b = L2;
    auto f = [a, b](const Vector3d& v) { return a.eval(v) * b.eval(v); };
    return make_star_body(L1.grid, [f, m, per_panel, n_phi](const Vector3d& u) {
        return radial_convolve_at(f, m, u, per_panel, n_phi);
    });
}

inline StarBody intersection_body(const StarBody& L) {
    return apply_radial(L, intersection_measure(3));
}

/// ---- Companion support bodies of radial operators -------------------------
///
/// h(M_Phi L, u) = (rho(L)^4 * g)(u); for the projection kernel this is the
/// centroid body up to the factor 2 V(L).

inline SupportBody m_phi(const StarBody& L, const ZonalKernel& k, int per_panel = 32,
                         int n_phi = 96) {
    StarBody src = L;
    auto f = [src](const Vector3d& v) {
        double r = src.eval(v);
        return r * r * r * r;
    };
    auto profile = k.profile;
    return make_support_body(L.grid, [f, profile, per_panel, n_phi](const Vector3d& u) {
        return integrate_zonal_product(f, profile, u, per_panel, n_phi);
    });
}

inline SupportBody centroid_body(const StarBody& L) {
    SupportBody m = m_phi(L, projection_kernel());
    return dilate(m, 1.0 / (2.0 * volume_star(L)));
}

/// Polar image Phi* K as a star body: rho = 1 / h(Phi K, .).
inline StarBody polar_image(const AtomicMeasure& m, const ZonalKernel& k, GridPtr grid) {
    return polar(apply_zonal(m, k, std::move(grid)));
}

}  // namespace cbh
