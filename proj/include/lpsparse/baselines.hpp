#pragma once

#include <optional>
#include <vector>

#include "lpsparse/types.hpp"

namespace lpsparse {

inline constexpr double kWeightCap = 1e12;
inline constexpr double kLassoSupportCushion = 1e-8;

/**
 * Weighted LASSO: minimize 1/2 ||y - A x||^2 + reg_param * sum_i w_i |x_i|.
 *
 * Coordinate descent runs cyclic sweeps from x = 0 and stops once the
 * largest coordinate change in a sweep is at most `tol`.
 */
struct LassoConfig {
    double reg_param = 0.0;
    std::optional<Vector> weights;  // all ones when absent
    int max_iter = 100000;          // sweeps
    double tol = 1e-10;
    bool record_objective = false;

    void validate(Index n) const;
};

struct LassoFit {
    SparseEstimate estimate;
    int sweeps = 0;
    /// Objective after each sweep (index 0 is the starting point), filled
    /// only when record_objective is set.
    std::vector<double> objective;
};

/// Throws ConvergenceError (carrying the last iterate) if max_iter sweeps
/// do not reach tol.
LassoFit lasso_cd_fit(const Matrix& a, const Vector& y, const LassoConfig& config);
SparseEstimate lasso_cd(const Matrix& a, const Vector& y, const LassoConfig& config);

double lasso_objective(const Matrix& a, const Vector& y, const Vector& x, double reg_param,
                       const Vector& weights);

/// Largest violation of the LASSO optimality conditions at x:
/// |a_i^T r| <= reg*w_i for x_i = 0, a_i^T r = sign(x_i) reg*w_i otherwise.
double lasso_kkt_violation(const Matrix& a, const Vector& y, const Vector& x, double reg_param,
                           const Vector& weights);

/// min(1 / |x_ls_i|^gamma, kWeightCap).
Vector adalasso_weights(const Vector& x_ls, double gamma);

/// N^(1/2 - gamma/4).
double adalasso_reg_param(Index n_obs, double gamma);

/// LSE, then weighted LASSO with adalasso_weights and adalasso_reg_param.
SparseEstimate adalasso(const Matrix& a, const Vector& y, double gamma, Index n_obs);

/// Plain LASSO tuned with reg_param = sqrt(N).
SparseEstimate lasso_sqrt_n(const Matrix& a, const Vector& y);

}  // namespace lpsparse
