#pragma once

#include "minkowski.hpp"
#include "operators.hpp"

namespace cbh {

/// One verified statement instance. margin is normalized and signed so that
/// margin >= 0 means the inequality holds; equalities aim at margin == 0.
struct TheoremCheck {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool equality_expected = false;
    double tol = 1e-6;      // violation threshold on -margin
    double eq_tol = 1e-4;   // |margin| threshold when equality is expected
    std::string rung;       // exact | quadrature | approx

    bool passed() const {
        if (!std::isfinite(margin)) return false;
        if (equality_expected) return std::abs(margin) <= eq_tol;
        return margin >= -tol;
    }
};

using CheckList = std::vector<TheoremCheck>;

namespace detail {

inline TheoremCheck ge_check(std::string id, double lhs, double rhs, bool equality,
                             double tol, std::string rung) {
    TheoremCheck c;
    c.id = std::move(id);
    c.lhs = lhs;
    c.rhs = rhs;
    double denom = std::max(std::abs(lhs), std::abs(rhs));
    c.margin = denom > 0.0 ? (lhs - rhs) / denom
                           : std::numeric_limits<double>::quiet_NaN();
    c.equality_expected = equality;
    c.tol = tol;
    c.rung = std::move(rung);
    return c;
}

inline TheoremCheck le_check(std::string id, double lhs, double rhs, bool equality,
                             double tol, std::string rung) {
    TheoremCheck c = ge_check(std::move(id), rhs, lhs, equality, tol, std::move(rung));
    std::swap(c.lhs, c.rhs);
    return c;
}

inline TheoremCheck eq_check(std::string id, double lhs, double rhs, double tol,
                             std::string rung) {
    TheoremCheck c = ge_check(std::move(id), lhs, rhs, true, tol, std::move(rung));
    c.eq_tol = tol;
    return c;
}

}  // namespace detail

/// Evaluation context shared by the checks: kernel, grid, and the polytopal
/// ball approximant used consistently wherever a ball entry appears.
struct PrimalCtx {
    ZonalKernel kernel;
    GridPtr grid;
    Polytope ball;

    double w_image(const AtomicMeasure& m, int i) const {
        return w_of_image(m, kernel, i, *grid);
    }

    /// W_0..W_2 of the image in one pass (a single conversion for kernels
    /// without a closed-form route).
    std::array<double, 3> w_images(const AtomicMeasure& m) const {
        std::array<double, 3> w{};
        w[2] = w2_of_image(m, kernel);
        if (kernel.name == "pi") {
            Zonotope z = zonotope_of(m);
            w[0] = zonotope_volume(z);
            w[1] = zonotope_surface_area(z) / 3.0;
            return w;
        }
        Polytope p = support_to_polytope(
            *grid, [&](const Vector3d& u) { return convolve_at(m, kernel, u); }, 0);
        w[0] = p.volume();
        w[1] = p.surface_area() / 3.0;
        return w;
    }

    /// V(Phi* X) = (1/3) ∫ h(Phi X, u)^{-3} du with the exact atomic field.
    double polar_volume(const AtomicMeasure& m) const {
        return integrate(*grid, [&](const Vector3d& u) {
            double h = convolve_at(m, kernel, u);
            if (!(h > 0.0)) throw std::runtime_error("polar image: nonpositive support value");
            return 1.0 / (h * h * h);
        }) / 3.0;
    }

    double tol_for(int i) const {
        // W_2 is analytic for any kernel and the projection kernel has the
        // exact zonotope route for all i; other kernels pass through the
        // circumscribed-polytope conversion
        if (i == 2 || kernel.name == "pi") return 1e-6;
        return 1e-4;
    }

    std::string rung_for(int i) const { return i == 2 ? "quadrature" : "approx"; }
};

/// W_i(Phi_1(K,L))^{n-1} >= W_i(Phi K)^{n-2} W_i(Phi L), i = 0..2, n = 3.
inline CheckList check_minkowski_bm(const PrimalCtx& c, const Polytope& K, const Polytope& L,
                                    bool equality = false) {
    auto wm = c.w_images(mixed_surface_area_measure(K, L));
    auto wK = c.w_images(surface_area_measure(K));
    auto wL = c.w_images(surface_area_measure(L));
    CheckList cs;
    for (int i = 0; i <= 2; ++i)
        cs.push_back(detail::ge_check("minkowski-" + c.kernel.name + "-w" + std::to_string(i),
                                      wm[i] * wm[i], wK[i] * wL[i], equality, c.tol_for(i),
                                      c.rung_for(i)));
    return cs;
}

/// W_i(Phi(K1,K2))^m >= prod_j W_i(Phi(K_j,...)), m = 1 or 2 in R^3.
/// No equality condition asserted.
inline CheckList check_af_bm(const PrimalCtx& c, const Polytope& K1, const Polytope& K2) {
    auto wm = c.w_images(mixed_surface_area_measure(K1, K2));
    auto w1 = c.w_images(surface_area_measure(K1));
    auto w2 = c.w_images(surface_area_measure(K2));
    CheckList cs;
    for (int m = 1; m <= 2; ++m)
        for (int i = 0; i <= 2; ++i) {
            double lhs = m == 1 ? wm[i] : wm[i] * wm[i];
            double rhs = m == 1 ? wm[i] : w1[i] * w2[i];
            cs.push_back(detail::ge_check("af-" + c.kernel.name + "-m" + std::to_string(m) +
                                              "-w" + std::to_string(i),
                                          lhs, rhs, false, c.tol_for(i), c.rung_for(i)));
        }
    return cs;
}

/// Corollary form: W_i(Phi(K1,K2))^{n-1} >= W_i(Phi K1) W_i(Phi K2).
inline CheckList check_cor_product(const PrimalCtx& c, const Polytope& K1, const Polytope& K2,
                                   bool equality = false) {
    auto wm = c.w_images(mixed_surface_area_measure(K1, K2));
    auto w1 = c.w_images(surface_area_measure(K1));
    auto w2 = c.w_images(surface_area_measure(K2));
    CheckList cs;
    for (int i = 0; i <= 2; ++i)
        cs.push_back(detail::ge_check("cor-product-" + c.kernel.name + "-w" + std::to_string(i),
                                      wm[i] * wm[i], w1[i] * w2[i], equality, c.tol_for(i),
                                      c.rung_for(i)));
    return cs;
}

/// W_i(Phi_j(K,L))^{n-1} >= W_i(Phi K)^{n-j-1} W_i(Phi L)^j, j copies of L.
inline CheckList check_cor_phi_j(const PrimalCtx& c, const Polytope& K, const Polytope& L,
                                 bool equality = false) {
    std::array<std::array<double, 3>, 3> wj{c.w_images(surface_area_measure(K)),
                                            c.w_images(mixed_surface_area_measure(K, L)),
                                            c.w_images(surface_area_measure(L))};
    CheckList cs;
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
            cs.push_back(detail::ge_check("cor-phij-" + c.kernel.name + "-w" + std::to_string(i) +
                                              "-j" + std::to_string(j),
                                          wj[j][i] * wj[j][i],
                                          std::pow(wj[0][i], 2 - j) * std::pow(wj[2][i], j),
                                          equality, c.tol_for(i), c.rung_for(i)));
    return cs;
}

/// Brunn-Minkowski type: W_i(Phi(K+L))^e >= W_i(Phi K)^e + W_i(Phi L)^e,
/// e = 1/((n-i)(n-1)) = 1/(2(3-i)).
inline CheckList check_bm_bm(const PrimalCtx& c, const Polytope& K, const Polytope& L,
                             bool equality = false) {
    auto ws = c.w_images(surface_area_measure(minkowski_sum(K, L)));
    auto wK = c.w_images(surface_area_measure(K));
    auto wL = c.w_images(surface_area_measure(L));
    CheckList cs;
    for (int i = 0; i <= 2; ++i) {
        const double e = 1.0 / ((3.0 - i) * 2.0);
        cs.push_back(detail::ge_check("bm-" + c.kernel.name + "-w" + std::to_string(i),
                                      std::pow(ws[i], e), std::pow(wK[i], e) + std::pow(wL[i], e),
                                      equality, c.tol_for(i), c.rung_for(i)));
    }
    return cs;
}

/// ---- Polar track (even support-type kernels only) -------------------------

inline void require_polar_track(const ZonalKernel& k) {
    if (!k.even || !k.is_support)
        throw std::invalid_argument("polar track requires an even support-type kernel");
}

/// V(Phi_1*(K,L))^{n-1} <= V(Phi* K)^{n-2} V(Phi* L).
inline TheoremCheck check_polar_minkowski(const PrimalCtx& c, const Polytope& K,
                                          const Polytope& L, bool equality = false) {
    require_polar_track(c.kernel);
    double lhs = std::pow(c.polar_volume(mixed_surface_area_measure(K, L)), 2);
    double rhs = c.polar_volume(surface_area_measure(K)) * c.polar_volume(surface_area_measure(L));
    return detail::le_check("polar-minkowski-" + c.kernel.name, lhs, rhs, equality, 1e-6,
                            "quadrature");
}

/// V(Phi*(K1,K2))^m <= prod_j V(Phi*(K_j,...)).
inline CheckList check_polar_af(const PrimalCtx& c, const Polytope& K1, const Polytope& K2) {
    require_polar_track(c.kernel);
    double mixed = c.polar_volume(mixed_surface_area_measure(K1, K2));
    double v1 = c.polar_volume(surface_area_measure(K1));
    double v2 = c.polar_volume(surface_area_measure(K2));
    CheckList cs;
    cs.push_back(detail::le_check("polar-af-" + c.kernel.name + "-m1", mixed, mixed, false, 1e-6,
                                  "quadrature"));
    cs.push_back(detail::le_check("polar-af-" + c.kernel.name + "-m2", mixed * mixed, v1 * v2,
                                  false, 1e-6, "quadrature"));
    return cs;
}

/// Corollary form of the polar product bound.
inline TheoremCheck check_polar_cor(const PrimalCtx& c, const Polytope& K1, const Polytope& K2,
                                    bool equality = false) {
    require_polar_track(c.kernel);
    double lhs = std::pow(c.polar_volume(mixed_surface_area_measure(K1, K2)), 2);
    double rhs = c.polar_volume(surface_area_measure(K1)) * c.polar_volume(surface_area_measure(K2));
    return detail::le_check("polar-cor-" + c.kernel.name, lhs, rhs, equality, 1e-6, "quadrature");
}

/// V(Phi*(K+L))^{-e} >= V(Phi* K)^{-e} + V(Phi* L)^{-e}, e = 1/(n(n-1)) = 1/6.
inline TheoremCheck check_polar_bm(const PrimalCtx& c, const Polytope& K, const Polytope& L,
                                   bool equality = false) {
    require_polar_track(c.kernel);
    const double e = -1.0 / 6.0;
    double lhs = std::pow(c.polar_volume(surface_area_measure(minkowski_sum(K, L))), e);
    double rhs = std::pow(c.polar_volume(surface_area_measure(K)), e) +
                 std::pow(c.polar_volume(surface_area_measure(L)), e);
    return detail::ge_check("polar-bm-" + c.kernel.name, lhs, rhs, equality, 1e-6, "quadrature");
}

/// ---- Dual track (radial operators on star bodies) --------------------------

struct DualCtx {
    ZonalMeasure measure;
    GridPtr grid;
    int per_panel = 16;
    int n_phi = 48;

    StarBody image(const StarBody& L) const {
        return apply_radial(L, measure, per_panel, n_phi);
    }
    StarBody image_mixed(const StarBody& A, const StarBody& B) const {
        return apply_radial_mixed(A, B, measure, per_panel, n_phi);
    }
};

/// W~_i(Psi(L1,L2))^m <= prod_j W~_i(Psi(L_j,...)), with equality iff dilates.
inline CheckList check_dual_af(const DualCtx& c, const StarBody& L1, const StarBody& L2, int m,
                               bool equality = false) {
    if (m < 1 || m > 2) throw std::invalid_argument("check_dual_af: m in 1..2 required");
    StarBody mixed = c.image_mixed(L1, L2);
    StarBody i1 = c.image(L1), i2 = c.image(L2);
    CheckList cs;
    for (int i = 0; i <= 2; ++i) {
        double wm = dual_quermassintegral(mixed, i);
        double lhs = m == 1 ? wm : wm * wm;
        double rhs = m == 1 ? wm : dual_quermassintegral(i1, i) * dual_quermassintegral(i2, i);
        cs.push_back(detail::le_check("dual-af-" + c.measure.name + "-m" + std::to_string(m) +
                                          "-w" + std::to_string(i),
                                      lhs, rhs, equality && m == 2, 1e-6, "quadrature"));
    }
    return cs;
}

/// Dual corollary: W~_i(Psi(L1,L2))^{n-1} <= W~_i(Psi L1) W~_i(Psi L2).
inline CheckList check_dual_cor(const DualCtx& c, const StarBody& L1, const StarBody& L2,
                                bool equality = false) {
    StarBody mixed = c.image_mixed(L1, L2);
    StarBody i1 = c.image(L1), i2 = c.image(L2);
    CheckList cs;
    for (int i = 0; i <= 2; ++i) {
        double wm = dual_quermassintegral(mixed, i);
        cs.push_back(detail::le_check("dual-cor-" + c.measure.name + "-w" + std::to_string(i),
                                      wm * wm,
                                      dual_quermassintegral(i1, i) * dual_quermassintegral(i2, i),
                                      equality, 1e-6, "quadrature"));
    }
    return cs;
}

/// Dual Brunn-Minkowski with radial addition:
/// W~_i(Psi(K +~ L))^e <= W~_i(Psi K)^e + W~_i(Psi L)^e, e = 1/(2(3-i)).
inline CheckList check_dual_bm(const DualCtx& c, const StarBody& K, const StarBody& L,
                               bool equality = false) {
    StarBody is = c.image(radial_sum(K, L, 1.0, 1.0));
    StarBody iK = c.image(K), iL = c.image(L);
    CheckList cs;
    for (int i = 0; i <= 2; ++i) {
        const double e = 1.0 / ((3.0 - i) * 2.0);
        cs.push_back(detail::le_check("dual-bm-" + c.measure.name + "-w" + std::to_string(i),
                                      std::pow(dual_quermassintegral(is, i), e),
                                      std::pow(dual_quermassintegral(iK, i), e) +
                                          std::pow(dual_quermassintegral(iL, i), e),
                                      equality, 1e-6, "quadrature"));
    }
    return cs;
}

/// ---- Adjointness and proportionality identities ----------------------------

/// W_i(K, Phi_j L) = W_j(L, Phi_i K) for i, j in {0, 1}; both sides are exact
/// atomic double sums.
inline CheckList check_lemma_wij(const PrimalCtx& c, const Polytope& K, const Polytope& L) {
    std::array<AtomicMeasure, 2> sK{area_measure(K, 0, c.ball), area_measure(K, 1, c.ball)};
    std::array<AtomicMeasure, 2> sL{area_measure(L, 0, c.ball), area_measure(L, 1, c.ball)};
    CheckList cs;
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j) {
            double lhs = mixed_volume_against(
                [&](const Vector3d& u) { return convolve_at(sL[j], c.kernel, u); }, sK[i]);
            double rhs = mixed_volume_against(
                [&](const Vector3d& u) { return convolve_at(sK[i], c.kernel, u); }, sL[j]);
            cs.push_back(detail::eq_check("lemma-wij-" + c.kernel.name + "-i" + std::to_string(i) +
                                              "-j" + std::to_string(j),
                                          lhs, rhs, 1e-9, "exact"));
        }
    return cs;
}

/// W_{n-1}(Phi_i K) = r_Phi W_{i+1}(K). Left side by grid quadrature of the
/// image support field, right side by the 1D kernel integral times the area
/// measure mass (an independent route).
inline CheckList check_lemma_wn1(const PrimalCtx& c, const Polytope& K) {
    // the image field has kinks off the grid axes for |t|-type profiles, so
    // the left side needs a finer quadrature than the working grid
    static const GridPtr fine = build_grid(3, 12);
    const double r_phi = kernel_constant(c.kernel);
    CheckList cs;
    for (int i = 0; i <= 1; ++i) {
        AtomicMeasure si = area_measure(K, i, c.ball);
        double lhs =
            w2_exact(*fine, [&](const Vector3d& u) { return convolve_at(si, c.kernel, u); });
        double rhs = r_phi * si.mass() / 3.0;
        cs.push_back(detail::eq_check("lemma-wn1-" + c.kernel.name + "-i" + std::to_string(i),
                                      lhs, rhs, 1e-4, "quadrature"));
    }
    return cs;
}

/// V~_{-1}(L, Phi*(K1,K2)) = V(K1, K2, M_Phi L). Left side by grid quadrature
/// of rho(L)^4 h(Phi(K1,K2), .), right side by per-atom band quadrature.
inline TheoremCheck check_lemma_polar_mphi(const PrimalCtx& c, const StarBody& L,
                                           const Polytope& K1, const Polytope& K2) {
    require_polar_track(c.kernel);
    AtomicMeasure m = mixed_surface_area_measure(K1, K2);
    static const GridPtr fine = build_grid(3, 12);
    double lhs = integrate(*fine, [&](const Vector3d& u) {
        double r = L.eval(u);
        return r * r * r * r * convolve_at(m, c.kernel, u);
    }) / 3.0;
    StarBody src = L;
    auto rho4 = [src](const Vector3d& v) {
        double r = src.eval(v);
        return r * r * r * r;
    };
    double rhs = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a)
        rhs += m.weights[a] * integrate_zonal_product(rho4, c.kernel.profile, m.dirs[a], 32, 96);
    rhs /= 3.0;
    return detail::eq_check("lemma-polar-mphi-" + c.kernel.name, lhs, rhs, 1e-4, "quadrature");
}

/// W~_i(K, Psi_j L) = W~_j(L, Psi_i K) for i, j in {0, 1}, the dual
/// adjointness.
inline CheckList check_lemma_dual_wij(const DualCtx& c, const StarBody& K, const StarBody& L) {
    StarBody ball = unit_ball_star(c.grid);
    std::array<StarBody, 2> psiL{c.image(L), c.image_mixed(L, ball)};
    std::array<StarBody, 2> psiK{c.image(K), c.image_mixed(K, ball)};
    CheckList cs;
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j) {
            VectorXd fi = (K.rho.array().pow(2.0 - i) * psiL[j].rho.array()).matrix();
            VectorXd fj = (L.rho.array().pow(2.0 - j) * psiK[i].rho.array()).matrix();
            double lhs = integrate(*c.grid, fi) / 3.0;
            double rhs = integrate(*c.grid, fj) / 3.0;
            cs.push_back(detail::eq_check("lemma-dual-wij-" + c.measure.name + "-i" +
                                              std::to_string(i) + "-j" + std::to_string(j),
                                          lhs, rhs, 1e-4, "quadrature"));
        }
    return cs;
}

/// W~_{n-1}(Psi_i L) = r_Psi W~_{i+1}(L), r_Psi the total measure mass.
inline CheckList check_lemma_dual_wn1(const DualCtx& c, const StarBody& L) {
    StarBody ball = unit_ball_star(c.grid);
    double r_psi = c.measure.equator_mass;
    if (c.measure.has_density()) {
        std::vector<double> x, w;
        for (int panel = 0; panel < 2; ++panel) {
            gauss_legendre_ab(200, panel == 0 ? -1.0 : 0.0, panel == 0 ? 0.0 : 1.0, x, w);
            for (int q = 0; q < 200; ++q) r_psi += 2.0 * pi() * w[q] * c.measure.density(x[q]);
        }
    }
    CheckList cs;
    for (int i = 0; i <= 1; ++i) {
        StarBody img = i == 0 ? c.image(L) : c.image_mixed(L, ball);
        double lhs = dual_quermassintegral(img, 2);
        double rhs = r_psi * dual_quermassintegral(L, i + 1.0);
        cs.push_back(detail::eq_check("lemma-dual-wn1-" + c.measure.name + "-i" +
                                          std::to_string(i),
                                      lhs, rhs, 1e-4, "quadrature"));
    }
    return cs;
}

}  // namespace cbh
