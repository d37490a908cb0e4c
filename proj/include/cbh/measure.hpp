#pragma once

#include <numeric>

#include "polytope.hpp"

namespace cbh {

/// Finite Borel measure on S^2 given by point masses at unit directions.
struct AtomicMeasure {
    std::vector<Vector3d> dirs;
    std::vector<double> weights;

    std::size_t size() const { return dirs.size(); }

    double mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

    Vector3d centroid() const {
        Vector3d c = Vector3d::Zero();
        for (std::size_t i = 0; i < size(); ++i) c += weights[i] * dirs[i];
        return c;
    }

    void push(const Vector3d& d, double w) {
        dirs.push_back(d);
        weights.push_back(w);
    }
};

/// Merge atoms whose directions agree within tol (radians) and drop atoms
/// with negligible total weight.
inline AtomicMeasure merge_atoms(const AtomicMeasure& m, double dir_tol = 1e-10,
                                 double weight_floor = 0.0) {
    AtomicMeasure out;
    const double cos_tol = std::cos(dir_tol);
    for (std::size_t i = 0; i < m.size(); ++i) {
        bool merged = false;
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (m.dirs[i].dot(out.dirs[j]) >= cos_tol) {
                out.weights[j] += m.weights[i];
                merged = true;
                break;
            }
        }
        if (!merged) out.push(m.dirs[i], m.weights[i]);
    }
    if (weight_floor > 0.0) {
        AtomicMeasure kept;
        for (std::size_t j = 0; j < out.size(); ++j)
            if (out.weights[j] > weight_floor) kept.push(out.dirs[j], out.weights[j]);
        return kept;
    }
    return out;
}

/// Surface area measure of a polytope: one atom per facet normal, weighted
/// by the total area of the coplanar triangles sharing that normal.
inline AtomicMeasure surface_area_measure(const Polytope& p) {
    Hull3D h(p.vertices());
    AtomicMeasure raw;
    for (const auto& f : h.facets()) raw.push(f.normal, f.area);
    return merge_atoms(raw, 1e-7, 1e-12 * p.surface_area());
}

/// Scaled sum l1*m1 + l2*m2 with coinciding directions merged.
inline AtomicMeasure combine(const AtomicMeasure& m1, const AtomicMeasure& m2, double l1,
                             double l2) {
    AtomicMeasure out;
    for (std::size_t i = 0; i < m1.size(); ++i) out.push(m1.dirs[i], l1 * m1.weights[i]);
    for (std::size_t i = 0; i < m2.size(); ++i) out.push(m2.dirs[i], l2 * m2.weights[i]);
    return merge_atoms(out, 1e-7);
}

/// Mixed surface area measure S(K, L; .) of two polytopes in R^3 via
/// polarization: 2 S(K,L) = S(K+L) - S(K) - S(L).
inline AtomicMeasure mixed_surface_area_measure(const Polytope& K, const Polytope& L) {
    AtomicMeasure sum = surface_area_measure(minkowski_sum(K, L));
    AtomicMeasure neg = combine(surface_area_measure(K), surface_area_measure(L), -1.0, -1.0);
    AtomicMeasure half = combine(sum, neg, 0.5, 0.5);
    // polarization leaves exact zeros at normals present in only one body
    double floor = 1e-10 * std::max(1.0, half.mass());
    AtomicMeasure out;
    for (std::size_t i = 0; i < half.size(); ++i) {
        if (half.weights[i] < -1e-7 * std::max(1.0, sum.mass()))
            throw std::runtime_error("mixed_surface_area_measure: negative atom");
        if (half.weights[i] > floor) out.push(half.dirs[i], half.weights[i]);
    }
    return out;
}

/// Check the hypotheses of the discrete existence theorem for surface area
/// measures: positive weights, unit directions, centroid zero, directions
/// not concentrated on a great subsphere.
inline void validate_minkowski_data(const AtomicMeasure& m, double tol = 1e-8) {
    if (m.size() < 4) throw std::invalid_argument("measure: need at least 4 atoms");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(m.weights[i] > 0.0)) throw std::invalid_argument("measure: weights must be positive");
        if (std::abs(m.dirs[i].norm() - 1.0) > 1e-9)
            throw std::invalid_argument("measure: directions must be unit vectors");
    }
    if (m.centroid().norm() > tol * std::max(1.0, m.mass()))
        throw std::invalid_argument("measure: centroid must vanish");
    Matrix3d second = Matrix3d::Zero();
    for (std::size_t i = 0; i < m.size(); ++i)
        second += m.weights[i] * m.dirs[i] * m.dirs[i].transpose();
    Eigen::SelfAdjointEigenSolver<Matrix3d> es(second);
    if (es.eigenvalues().minCoeff() <= tol * m.mass())
        throw std::invalid_argument("measure: directions concentrated on a great circle");
}

}  // namespace cbh
