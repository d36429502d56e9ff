#pragma once

// Independent reference computations used only by the tests. None of these
// route through the library code paths they check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// (A^T A)^-1 A^T y by Cholesky on the normal equations.
inline VectorXd normal_equations(const MatrixXd& a, const VectorXd& y) {
    const MatrixXd gram = a.transpose() * a;
    return gram.llt().solve(a.transpose() * y);
}

struct GridMinimum {
    double l1 = std::numeric_limits<double>::infinity();
    double step = 0.0;
};

/// Exhaustive minimum of ||x||_1 over a regular grid of the box
/// {x : |x_i - center_i| <= radius}, `points` per axis. n <= 3.
inline GridMinimum grid_l1_minimum(const VectorXd& center, double radius, int points) {
    const int n = static_cast<int>(center.size());
    GridMinimum g;
    g.step = 2.0 * radius / (points - 1);
    auto coord = [&](int axis, int k) { return center[axis] - radius + g.step * k; };
    const int p1 = n > 1 ? points : 1;
    const int p2 = n > 2 ? points : 1;
    for (int i = 0; i < points; ++i) {
        const double a0 = std::abs(coord(0, i));
        for (int j = 0; j < p1; ++j) {
            const double a1 = n > 1 ? std::abs(coord(1, j)) : 0.0;
            for (int k = 0; k < p2; ++k) {
                const double a2 = n > 2 ? std::abs(coord(2, k)) : 0.0;
                const double v = a0 + a1 + a2;
                if (v < g.l1) g.l1 = v;
            }
        }
    }
    return g;
}

/// P(|Z| <= lambda * sigma) for Z ~ N(0, 1): the exact feasibility
/// probability of a one-parameter problem with ||a|| = sigma.
inline double scalar_feasibility_probability(double lambda, double sigma) {
    return std::erf(lambda * sigma / std::sqrt(2.0));
}

/// Matrix with orthonormal columns from the QR of a Gaussian matrix.
inline MatrixXd random_orthonormal(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    MatrixXd g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = normal(gen);
    Eigen::HouseholderQR<MatrixXd> qr(g);
    return qr.householderQ() * MatrixXd::Identity(rows, cols);
}

inline MatrixXd random_gaussian(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    MatrixXd g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = normal(gen);
    return g;
}

/// Piecewise soft-threshold written out by cases, for cross-checking.
inline double shrink_scalar(double x, double lambda) {
    if (x > lambda) return x - lambda;
    if (x < -lambda) return x + lambda;
    return 0.0;
}

}  // namespace oracle
