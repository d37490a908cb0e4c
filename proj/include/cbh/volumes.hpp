#pragma once

#include "fields.hpp"
#include "measure.hpp"

namespace cbh {

inline double volume(const Polytope& p) { return p.volume(); }

/// Mixed volume of three bodies in R^3 by inclusion-exclusion:
/// 6 V(K1,K2,K3) = V(K1+K2+K3) - V(K1+K2) - V(K1+K3) - V(K2+K3)
///               + V(K1) + V(K2) + V(K3).
inline double mixed_volume(const Polytope& K1, const Polytope& K2, const Polytope& K3) {
    double s = minkowski_sum(minkowski_sum(K1, K2), K3).volume();
    s -= minkowski_sum(K1, K2).volume();
    s -= minkowski_sum(K1, K3).volume();
    s -= minkowski_sum(K2, K3).volume();
    s += K1.volume() + K2.volume() + K3.volume();
    return s / 6.0;
}

/// V(K, L, L') = (1/3) ∫ h(K, u) dS(L, L'; u) for a support function given
/// as a callable and an atomic mixed surface area measure.
template <typename SupportFn>
inline double mixed_volume_against(SupportFn&& h, const AtomicMeasure& m) {
    double s = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a) s += m.weights[a] * h(m.dirs[a]);
    return s / 3.0;
}

/// Quermassintegral W_i(K) with the unit ball replaced consistently by the
/// polytope `ball`, so mixed-volume identities hold exactly for the
/// substituted bodies.
inline double quermassintegral(const Polytope& K, int i, const Polytope& ball) {
    switch (i) {
        case 0: return K.volume();
        case 1: return mixed_volume(K, K, ball);
        case 2: return mixed_volume(K, ball, ball);
        case 3: return ball.volume();
        default: throw std::invalid_argument("quermassintegral: i in 0..3 required");
    }
}

/// W_1 against the exact unit ball: one third of the surface area.
inline double w1_exact(const Polytope& K) { return K.surface_area() / 3.0; }

/// W_2 against the exact unit ball: (1/3) ∫ h(K, u) du on the grid.
template <typename SupportFn>
inline double w2_exact(const SphericalGrid& g, SupportFn&& h) {
    return integrate(g, std::forward<SupportFn>(h)) / 3.0;
}

inline double volume_star(const StarBody& K) {
    return integrate(*K.grid, VectorXd(K.rho.array().cube().matrix())) / 3.0;
}

/// Dual mixed volume (1/3) ∫ rho(K1) rho(K2) rho(K3) du on a shared grid.
inline double dual_mixed_volume(const StarBody& K1, const StarBody& K2, const StarBody& K3) {
    if (K1.grid != K2.grid || K1.grid != K3.grid)
        throw std::invalid_argument("dual_mixed_volume: shared grid required");
    VectorXd prod = (K1.rho.array() * K2.rho.array() * K3.rho.array()).matrix();
    return integrate(*K1.grid, prod) / 3.0;
}

/// V~_r(K, L) = (1/3) ∫ rho(K)^{3-r} rho(L)^r du; r may be negative
/// (r = -1 needs rho(L) > 0, which star bodies guarantee).
inline double dual_mixed_volume_r(const StarBody& K, const StarBody& L, double r) {
    if (K.grid != L.grid) throw std::invalid_argument("dual_mixed_volume_r: shared grid required");
    VectorXd prod = (K.rho.array().pow(3.0 - r) * L.rho.array().pow(r)).matrix();
    return integrate(*K.grid, prod) / 3.0;
}

/// Dual quermassintegral W~_i(K) = (1/3) ∫ rho(K)^{3-i} du.
inline double dual_quermassintegral(const StarBody& K, double i) {
    VectorXd f = K.rho.array().pow(3.0 - i).matrix();
    return integrate(*K.grid, f) / 3.0;
}

}  // namespace cbh
