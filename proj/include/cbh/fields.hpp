#pragma once

#include <functional>
#include <utility>

#include "polytope.hpp"

namespace cbh {

using SphereFn = std::function<double(const Vector3d&)>;

namespace detail {

/// Bilinear interpolation of a nodal field on the structured (t, phi) grid.
/// Convex weights; exact on constants. t is clamped to the node range (the
/// polar caps not covered by Gauss nodes are tiny).
inline double interpolate_field(const SphericalGrid& g, const VectorXd& field,
                                const Vector3d& u) {
    if (g.n_t == 0) throw std::invalid_argument("interpolate: unstructured grid");
    const double t = std::clamp(u.z(), g.t_nodes.front(), g.t_nodes.back());
    double phi = std::atan2(u.y(), u.x());
    if (phi < 0.0) phi += 2.0 * pi();
    const double dphi = 2.0 * pi() / g.n_phi;
    int ip = static_cast<int>(phi / dphi);
    if (ip >= g.n_phi) ip = g.n_phi - 1;
    const double fp = (phi - ip * dphi) / dphi;
    const int ip1 = (ip + 1) % g.n_phi;

    auto hi_it = std::upper_bound(g.t_nodes.begin(), g.t_nodes.end(), t);
    int it1 = static_cast<int>(hi_it - g.t_nodes.begin());
    int it0 = it1 - 1;
    double ft;
    if (it1 == 0) {
        it0 = it1 = 0;
        ft = 0.0;
    } else if (it1 == g.n_t) {
        it0 = it1 = g.n_t - 1;
        ft = 0.0;
    } else {
        ft = (t - g.t_nodes[it0]) / (g.t_nodes[it1] - g.t_nodes[it0]);
    }
    auto at = [&](int it, int jp) { return field[it * g.n_phi + jp]; };
    return (1.0 - ft) * ((1.0 - fp) * at(it0, ip) + fp * at(it0, ip1)) +
           ft * ((1.0 - fp) * at(it1, ip) + fp * at(it1, ip1));
}

}  // namespace detail

/// Star body: radial samples on a shared grid, optionally backed by a
/// closed-form radial function (used for off-grid evaluation when present).
struct StarBody {
    GridPtr grid;
    VectorXd rho;
    SphereFn eval_fn;

    double eval(const Vector3d& u) const {
        if (eval_fn) return eval_fn(u);
        return detail::interpolate_field(*grid, rho, u);
    }

    void validate() const {
        for (Eigen::Index i = 0; i < rho.size(); ++i)
            if (!(rho[i] > 0.0)) throw std::invalid_argument("star body: rho must be positive");
    }
};

/// Support samples on a shared grid, optionally with exact off-grid evaluation.
struct SupportBody {
    GridPtr grid;
    VectorXd h;
    SphereFn eval_fn;

    double eval(const Vector3d& u) const {
        if (eval_fn) return eval_fn(u);
        return detail::interpolate_field(*grid, h, u);
    }
};

inline VectorXd sample(const SphericalGrid& g, const SphereFn& f) {
    VectorXd v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.nodes3[i]);
    return v;
}

inline StarBody make_star_body(GridPtr grid, SphereFn f) {
    StarBody b{std::move(grid), {}, std::move(f)};
    b.rho = sample(*b.grid, b.eval_fn);
    b.validate();
    return b;
}

inline SupportBody make_support_body(GridPtr grid, SphereFn f) {
    SupportBody b{std::move(grid), {}, std::move(f)};
    b.h = sample(*b.grid, b.eval_fn);
    return b;
}

inline StarBody unit_ball_star(GridPtr grid, double radius = 1.0) {
    return make_star_body(std::move(grid), [radius](const Vector3d&) { return radius; });
}

inline SupportBody support_body_of(const Polytope& p, GridPtr grid) {
    return make_support_body(std::move(grid), [p](const Vector3d& u) { return p.support(u); });
}

inline StarBody radial_sum(const StarBody& K, const StarBody& L, double l1, double l2) {
    if (K.grid != L.grid) throw std::invalid_argument("radial_sum: shared grid required");
    if (l1 < 0.0 || l2 < 0.0) throw std::invalid_argument("radial_sum: negative weight");
    StarBody out{K.grid, l1 * K.rho + l2 * L.rho, nullptr};
    if (K.eval_fn && L.eval_fn) {
        auto e1 = K.eval_fn, e2 = L.eval_fn;
        out.eval_fn = [e1, e2, l1, l2](const Vector3d& u) { return l1 * e1(u) + l2 * e2(u); };
    }
    out.validate();
    return out;
}

/// rho^{n-1}-additive combination (radial Blaschke sum), n = 3.
inline StarBody radial_blaschke_sum(const StarBody& K, const StarBody& L, double l1, double l2) {
    if (K.grid != L.grid) throw std::invalid_argument("radial_blaschke_sum: shared grid required");
    if (l1 < 0.0 || l2 < 0.0 || l1 + l2 <= 0.0)
        throw std::invalid_argument("radial_blaschke_sum: weights must be >= 0, not both 0");
    const int n = 3;
    StarBody out{K.grid, {}, nullptr};
    out.rho = (l1 * K.rho.array().pow(n - 1) + l2 * L.rho.array().pow(n - 1))
                  .pow(1.0 / (n - 1))
                  .matrix();
    if (K.eval_fn && L.eval_fn) {
        auto e1 = K.eval_fn, e2 = L.eval_fn;
        out.eval_fn = [e1, e2, l1, l2](const Vector3d& u) {
            return std::sqrt(l1 * e1(u) * e1(u) + l2 * e2(u) * e2(u));
        };
    }
    out.validate();
    return out;
}

inline StarBody dilate(const StarBody& K, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("dilate: lambda > 0 required");
    StarBody out{K.grid, lambda * K.rho, nullptr};
    if (K.eval_fn) {
        auto e = K.eval_fn;
        out.eval_fn = [e, lambda](const Vector3d& u) { return lambda * e(u); };
    }
    return out;
}

inline SupportBody dilate(const SupportBody& K, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("dilate: lambda > 0 required");
    SupportBody out{K.grid, lambda * K.h, nullptr};
    if (K.eval_fn) {
        auto e = K.eval_fn;
        out.eval_fn = [e, lambda](const Vector3d& u) { return lambda * e(u); };
    }
    return out;
}

inline StarBody rotate(const StarBody& K, const Matrix3d& R) {
    if (!is_rotation(R)) throw std::invalid_argument("rotate: matrix is not a rotation");
    Matrix3d Rt = R.transpose();
    StarBody src = K;
    SphereFn f = [src, Rt](const Vector3d& u) { return src.eval(Rt * u); };
    return make_star_body(K.grid, std::move(f));
}

inline SupportBody rotate(const SupportBody& K, const Matrix3d& R) {
    if (!is_rotation(R)) throw std::invalid_argument("rotate: matrix is not a rotation");
    Matrix3d Rt = R.transpose();
    SupportBody src = K;
    SphereFn f = [src, Rt](const Vector3d& u) { return src.eval(Rt * u); };
    return make_support_body(K.grid, std::move(f));
}

/// Polar: rho(K*, u) = 1 / h(K, u); origin must be strictly interior.
inline StarBody polar(const SupportBody& K) {
    for (Eigen::Index i = 0; i < K.h.size(); ++i)
        if (!(K.h[i] > 0.0)) throw std::invalid_argument("polar: origin not interior");
    StarBody out{K.grid, K.h.cwiseInverse(), nullptr};
    if (K.eval_fn) {
        auto e = K.eval_fn;
        out.eval_fn = [e](const Vector3d& u) { return 1.0 / e(u); };
    }
    return out;
}

inline StarBody polar(const Polytope& p, GridPtr grid) {
    return polar(support_body_of(p, std::move(grid)));
}

/// Pointwise reciprocal back to a support body (round-trip inverse of polar).
inline SupportBody polar(const StarBody& K) {
    K.validate();
    SupportBody out{K.grid, K.rho.cwiseInverse(), nullptr};
    if (K.eval_fn) {
        auto e = K.eval_fn;
        out.eval_fn = [e](const Vector3d& u) { return 1.0 / e(u); };
    }
    return out;
}

inline Vector3d steiner_point(const SupportBody& K) {
    const SphericalGrid& g = *K.grid;
    Vector3d s = Vector3d::Zero();
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * K.h[i] * g.nodes3[i];
    return s / unit_ball_volume(3);
}

namespace detail {

/// Coarse-to-fine tangent-plane search maximizing the (concave over the unit
/// ball) separation v . d - h(d). Returns the best direction; handles the
/// kinks of polytopal support functions where gradient ascent stalls.
template <typename SupportFn>
inline Vector3d separating_direction(const Vector3d& v, SupportFn&& h, const Vector3d& seed,
                                     double& best) {
    Vector3d c = seed;
    double theta = 0.8;
    best = v.dot(c) - h(c);
    for (int level = 0; level < 12; ++level) {
        Vector3d b1, b2;
        orthonormal_basis(c, b1, b2);
        Vector3d cn = c;
        double bn = best;
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j) {
                if (i == 0 && j == 0) continue;
                Vector3d d = (c + theta * (i / 4.0) * b1 + theta * (j / 4.0) * b2).normalized();
                double f = v.dot(d) - h(d);
                if (f > bn) {
                    bn = f;
                    cn = d;
                }
            }
        c = cn;
        best = bn;
        theta /= 3.0;
    }
    return c;
}

}  // namespace detail

/// Circumscribed polytope of a support function: intersection of the
/// halfspaces {x . u_i <= h_i} over the grid directions, built through the
/// dual hull. With refine_rounds > 0, vertices of the current intersection
/// that stick out of the body are cut off along separating directions found
/// by local search, which recovers true facet planes of polytopal input.
template <typename SupportFn>
inline Polytope support_to_polytope(const SphericalGrid& g, SupportFn&& h, int refine_rounds = 3) {
    std::vector<Vector3d> dirs = g.nodes3;
    std::vector<double> hs;
    hs.reserve(dirs.size());
    double scale = 0.0;
    for (const auto& u : dirs) {
        double hu = h(u);
        if (!(hu > 0.0))
            throw std::invalid_argument("support_to_polytope: origin not interior");
        hs.push_back(hu);
        scale = std::max(scale, hu);
    }
    const double sep_tol = 1e-9 * scale;
    const double feas_tol = 1e-9 * scale;
    const double dup_dot = 1.0 - 5e-5;
    std::vector<Vector3d> cuts;
    for (int round = 0;; ++round) {
        std::vector<Vector3d> dual;
        dual.reserve(dirs.size());
        for (std::size_t i = 0; i < dirs.size(); ++i) dual.push_back(dirs[i] / hs[i]);
        Hull3D dh = compute_hull(dual);
        std::vector<Vector3d> verts;
        verts.reserve(dh.facets().size());
        for (const auto& f : dh.facets()) {
            // crowded cut planes can degenerate a dual facet; its "vertex"
            // lies near infinity and cannot be feasible, so skip it
            if (f.offset <= 1e-14) continue;
            Vector3d x = f.normal / f.offset;
            // degenerate dual facets can carry garbage planes; keep only
            // vertices that actually satisfy every constraint
            bool feasible = true;
            for (std::size_t i = 0; i < dirs.size(); ++i)
                if (dirs[i].dot(x) - hs[i] > feas_tol) {
                    feasible = false;
                    break;
                }
            if (feasible) verts.push_back(x);
        }
        Polytope out(std::move(verts));
        if (round == refine_rounds) return out;
        bool grew = false;
        for (const auto& v : out.vertices()) {
            double best;
            Vector3d d = detail::separating_direction(v, h, v.normalized(), best);
            if (best <= sep_tol) continue;
            bool dup = false;
            for (const auto& e : cuts)
                if (e.dot(d) > dup_dot) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            cuts.push_back(d);
            dirs.push_back(d);
            hs.push_back(h(d));
            grew = true;
        }
        if (!grew) return out;
    }
}

inline Polytope to_polytope(const SupportBody& K, int refine_rounds = 3) {
    return support_to_polytope(*K.grid, [&](const Vector3d& u) { return K.eval(u); },
                               refine_rounds);
}

/// Deterministic random star body: exp of a random low-degree directional
/// polynomial; the smoothness knob damps the higher-degree terms. Radial
/// values kept inside [0.2, 5].
inline StarBody random_star_body(std::uint64_t seed, int smoothness, GridPtr grid) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    struct Term {
        Vector3d dir;
        int power;
        double coeff;
    };
    std::vector<Term> terms;
    const double damp = std::pow(0.5, std::max(0, smoothness) / 3.0);
    for (int k = 0; k < 6; ++k) {
        int p = 1 + k % 4;
        terms.push_back({random_unit_vector(rng), p,
                         0.8 * gauss(rng) * std::pow(damp, p - 1)});
    }
    auto raw = [terms](const Vector3d& u) {
        double q = 0.0;
        for (const auto& t : terms) q += t.coeff * std::pow(t.dir.dot(u), t.power);
        return q;
    };
    // rescale so exp(q) stays within the radial bounds, then clamp as a guard
    double qmax = 0.0;
    for (const auto& u : grid->nodes3) qmax = std::max(qmax, std::abs(raw(u)));
    const double cap = 0.9 * std::log(5.0);
    const double scale = qmax > cap ? cap / qmax : 1.0;
    SphereFn f = [raw, scale](const Vector3d& u) {
        return std::clamp(std::exp(scale * raw(u)), 0.2, 5.0);
    };
    return make_star_body(std::move(grid), std::move(f));
}

/// Homothety test for polytopes: Steiner-center, volume-normalize, compare
/// sampled support functions in sup-norm.
inline bool homothetic(const Polytope& K, const Polytope& L, const SphericalGrid& g,
                       double tol = 1e-5) {
    Polytope K0 = steiner_center(K, g);
    Polytope L0 = steiner_center(L, g);
    double sK = std::cbrt(1.0 / K0.volume());
    double sL = std::cbrt(1.0 / L0.volume());
    double err = 0.0, mag = 0.0;
    for (const auto& u : g.nodes3) {
        double a = sK * K0.support(u), b = sL * L0.support(u);
        err = std::max(err, std::abs(a - b));
        mag = std::max(mag, std::max(std::abs(a), std::abs(b)));
    }
    return err <= tol * std::max(1.0, mag);
}

/// Dilate test for star bodies: normalized radial fields within sup tol.
inline bool dilates(const StarBody& K, const StarBody& L, double tol = 1e-5) {
    if (K.grid != L.grid) throw std::invalid_argument("dilates: shared grid required");
    double mK = K.rho.mean(), mL = L.rho.mean();
    if (!(mK > 0.0) || !(mL > 0.0)) return false;
    return ((K.rho / mK) - (L.rho / mL)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace cbh
