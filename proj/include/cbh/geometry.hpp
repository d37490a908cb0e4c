#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace cbh {

using Eigen::Matrix3d;
using Eigen::Vector3d;
using Eigen::VectorXd;

inline constexpr double pi() { return 3.14159265358979323846; }

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    // kappa_n = pi^(n/2) / Gamma(n/2 + 1)
    return std::pow(pi(), 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface area of S^{n-1}.
inline double sphere_surface_area(int n) {
    return n * unit_ball_volume(n);
}

inline Vector3d normalized_or_throw(const Vector3d& v) {
    double n = v.norm();
    if (n < 1e-14) throw std::invalid_argument("cannot normalize zero vector");
    return v / n;
}

/// Any orthonormal pair spanning the plane orthogonal to a unit vector u.
inline void orthonormal_basis(const Vector3d& u, Vector3d& b1, Vector3d& b2) {
    Vector3d a = std::abs(u.x()) < 0.7 ? Vector3d::UnitX() : Vector3d::UnitY();
    b1 = (a - a.dot(u) * u).normalized();
    b2 = u.cross(b1);
}

inline bool is_rotation(const Matrix3d& R, double tol = 1e-10) {
    return (R.transpose() * R - Matrix3d::Identity()).norm() <= tol &&
           R.determinant() > 0.0;
}

/// Rotation mapping the pole e3 onto the unit vector u.
inline Matrix3d rotation_to_axis(const Vector3d& u) {
    Vector3d b1, b2;
    orthonormal_basis(u, b1, b2);
    Matrix3d R;
    R.col(0) = b1;
    R.col(1) = b2;
    R.col(2) = u;
    return R;
}

/// Uniform random rotation (quaternion method), deterministic in the engine state.
inline Matrix3d random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Vector4d q(g(rng), g(rng), g(rng), g(rng));
    q.normalize();
    double w = q[0], x = q[1], y = q[2], z = q[3];
    Matrix3d R;
    R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return R;
}

inline Vector3d random_unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector3d v;
    do {
        v = Vector3d(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-12);
    return v.normalized();
}

/// Uniform point in the unit ball.
inline Vector3d random_ball_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Vector3d d = random_unit_vector(rng);
    return std::cbrt(u01(rng)) * d;
}

}  // namespace cbh
