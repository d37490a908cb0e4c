#pragma once

#include <algorithm>
#include <array>

#include <Eigen/SVD>

#include "measure.hpp"

namespace cbh {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Build P(h) = ∩ {x . d_i <= h_i} through the dual hull and return its
/// facet areas matched back to the input directions (0 for inactive ones).
struct HPolytope {
    Polytope body;
    VectorXd areas;
};

inline HPolytope from_halfspaces(const std::vector<Vector3d>& dirs, const VectorXd& h) {
    const std::size_t m = dirs.size();
    std::vector<Vector3d> dual;
    dual.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(h[i] > 0.0)) throw HullError("halfspaces: origin not interior");
        dual.push_back(dirs[i] / h[i]);
    }
    Hull3D dh = compute_hull(dual);
    std::vector<Vector3d> verts;
    for (const auto& f : dh.facets()) {
        if (f.offset <= 1e-14) throw HullError("halfspaces: unbounded");
        verts.push_back(f.normal / f.offset);
    }
    HPolytope out{Polytope(std::move(verts)), VectorXd::Zero(m)};
    // facet area per input direction: shoelace over the vertices lying on
    // that supporting plane. No normal matching, so sliver facets of
    // nearly-degenerate iterates cannot orphan their area.
    const double on_tol = 1e-9 * h.maxCoeff();
    const auto& vs = out.body.vertices();
    std::vector<std::array<double, 2>> poly;
    for (std::size_t i = 0; i < m; ++i) {
        poly.clear();
        Vector3d b1, b2;
        orthonormal_basis(dirs[i], b1, b2);
        for (const auto& v : vs)
            if (dirs[i].dot(v) >= h[i] - on_tol) poly.push_back({b1.dot(v), b2.dot(v)});
        if (poly.size() < 3) continue;
        double cx = 0.0, cy = 0.0;
        for (const auto& p : poly) {
            cx += p[0];
            cy += p[1];
        }
        cx /= static_cast<double>(poly.size());
        cy /= static_cast<double>(poly.size());
        std::sort(poly.begin(), poly.end(), [&](const auto& p, const auto& q) {
            return std::atan2(p[1] - cy, p[0] - cx) < std::atan2(q[1] - cy, q[0] - cx);
        });
        double area2 = 0.0;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const auto& p = poly[k];
            const auto& q = poly[(k + 1) % poly.size()];
            area2 += p[0] * q[1] - q[0] * p[1];
        }
        out.areas[i] = 0.5 * std::abs(area2);
    }
    return out;
}

}  // namespace detail

struct MinkowskiSolution {
    Polytope body;
    double residual = 0.0;  // max relative facet-area error
    int iterations = 0;
};

/// Solve the discrete Minkowski problem: find the polytope (unique up to
/// translation) whose surface area measure equals the given atomic measure.
/// Variational ascent of the volume on the affine slice sum a_i h_i = const,
/// polished by a finite-difference Newton solve of A(h) = lambda a, then an
/// exact dilation to lambda = 1. Output is centered at its Steiner point.
inline MinkowskiSolution solve_minkowski(const AtomicMeasure& target, const SphericalGrid& grid,
                                         double tol = 1e-6, int max_iter = 600) {
    validate_minkowski_data(target);
    const std::size_t m = target.size();
    // mass-normalize so the iteration sees O(1) data; undo by dilation at the
    // end (areas scale quadratically)
    const double mass = target.mass();
    VectorXd a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = target.weights[i] / mass;

    VectorXd h = VectorXd::Ones(m);
    const double budget = a.sum();  // keep sum a_i h_i fixed at its initial value
    auto rescale_to_budget = [&](VectorXd& v) { v *= budget / a.dot(v); };

    auto residual_of = [&](const VectorXd& areas) {
        double lam = areas.dot(a) / a.dot(a);
        double r = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            r = std::max(r, std::abs(areas[i] - lam * a[i]) / (lam * a[i]));
        return r;
    };

    detail::HPolytope cur = detail::from_halfspaces(target.dirs, h);
    int iters = 0;
    double step = 0.5;
    // phase 1: projected gradient ascent with backtracking (monotone volume)
    for (; iters < max_iter; ++iters) {
        if (residual_of(cur.areas) < 10.0 * tol) break;
        VectorXd g = cur.areas;
        g -= (g.dot(a) / a.dot(a)) * a;
        double gn = g.norm();
        if (gn < 1e-15) break;
        bool moved = false;
        for (int bt = 0; bt < 30; ++bt) {
            VectorXd h2 = h + (step / gn) * g;
            if (h2.minCoeff() <= 1e-6) {
                step *= 0.5;
                continue;
            }
            rescale_to_budget(h2);
            try {
                detail::HPolytope next = detail::from_halfspaces(target.dirs, h2);
                if (next.body.volume() > cur.body.volume()) {
                    h = h2;
                    cur = std::move(next);
                    moved = true;
                    step *= 1.3;
                    break;
                }
            } catch (const HullError&) {
            }
            step *= 0.5;
        }
        if (!moved) break;
    }

    // phase 2: Newton on F(h) = A(h) - lambda(h) a, Jacobian by forward
    // differences, least-squares step (translations span the nullspace)
    for (int it = 0; it < 40 && residual_of(cur.areas) > tol * 0.01; ++it, ++iters) {
        double lam = cur.areas.dot(a) / a.dot(a);
        VectorXd F = cur.areas - lam * a;
        Eigen::MatrixXd J(m, m);
        const double fd = 1e-6 * h.mean();
        for (std::size_t j = 0; j < m; ++j) {
            VectorXd hj = h;
            hj[j] += fd;
            detail::HPolytope pj = detail::from_halfspaces(target.dirs, hj);
            double lamj = pj.areas.dot(a) / a.dot(a);
            J.col(j) = ((pj.areas - lamj * a) - F) / fd;
        }
        VectorXd dh = J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                          .setThreshold(1e-8)
                          .solve(-F);
        bool moved = false;
        for (int bt = 0; bt < 12; ++bt) {
            VectorXd h2 = h + dh;
            if (h2.minCoeff() > 1e-8) {
                rescale_to_budget(h2);
                try {
                    detail::HPolytope next = detail::from_halfspaces(target.dirs, h2);
                    if (residual_of(next.areas) < residual_of(cur.areas)) {
                        h = h2;
                        cur = std::move(next);
                        moved = true;
                        break;
                    }
                } catch (const HullError&) {
                }
            }
            dh *= 0.5;
        }
        if (!moved) break;
    }

    double res = residual_of(cur.areas);
    if (res > tol)
        throw SolverError("solve_minkowski: residual " + std::to_string(res) +
                          " above tolerance after " + std::to_string(iters) + " iterations");

    // areas currently equal lambda * a; dilation by lambda^{-1/2} makes them
    // a, and a further sqrt(mass) restores the original weights
    double lam = cur.areas.dot(a) / a.dot(a);
    Polytope scaled = dilate(cur.body, std::sqrt(mass / lam));
    return {steiner_center(scaled, grid), res, iters};
}

/// Blaschke linear combination: the body whose surface area measure is
/// l1 S(K) + l2 S(L), recovered by the Minkowski solver.
inline Polytope blaschke_sum(const Polytope& K, const Polytope& L, double l1, double l2,
                             const SphericalGrid& grid, double tol = 1e-6) {
    if (l1 < 0.0 || l2 < 0.0 || l1 + l2 <= 0.0)
        throw std::invalid_argument("blaschke_sum: weights must be >= 0, not both 0");
    AtomicMeasure m = combine(surface_area_measure(K), surface_area_measure(L), l1, l2);
    return solve_minkowski(m, grid, tol).body;
}

}  // namespace cbh
