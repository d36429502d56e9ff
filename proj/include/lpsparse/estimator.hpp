#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lpsparse/linalg.hpp"
#include "lpsparse/types.hpp"

namespace lpsparse {

/// Magnitude under which a thresholded coordinate is treated as zero.
inline constexpr double kSupportCushion = 1e-12;

struct EstimatorConfig {
    /// Exponent in lambda^2 = 2n / N^(1 - epsilon); must lie in (0, 1)
    /// unless lambda_override is set.
    double epsilon = 1.0 / 3.0;
    /// Use this threshold instead of the schedule.
    std::optional<double> lambda_override;
    /// Known (or estimated) noise standard deviation; multiplies lambda.
    std::optional<double> noise_std_scaling;

    void validate() const;
};

/// Every intermediate of one LSE -> soft-threshold -> re-LSE run.
struct PipelineTrace {
    Vector x_ls;
    double lambda = 0.0;
    Vector x_lp;
    Support support_lp;
    Vector x_rels;
    bool rank_warning = false;

    SparseEstimate final_estimate() const { return {x_rels, support_lp, Method::LpRelse}; }
};

/// sqrt(2n / N^(1 - epsilon)).
double compute_lambda(Index n, Index n_obs, double epsilon);

/// Threshold actually used by estimate(): the override or the schedule,
/// times the noise scaling when present.
double resolve_lambda(const EstimatorConfig& config, Index n, Index n_obs);

/// Componentwise shrinkage toward zero; |x_i| <= lambda maps to exactly 0.
/// This is the closed-form minimizer of ||x||_1 s.t. ||x - x_ls||_inf <= lambda.
Vector soft_threshold(const Vector& x_ls, double lambda);

Support detect_support(const Vector& x_lp, double cushion = kSupportCushion);

PipelineTrace estimate(const Matrix& a, const Vector& y, const EstimatorConfig& config);

/// Same as above, reusing a precomputed factorization of `a`.
PipelineTrace estimate(const Matrix& a, const SvdFactors& svd, const Vector& y,
                       const EstimatorConfig& config);

/// Least squares over the known true support.
SparseEstimate oracle_lse(const Matrix& a, const Vector& y, const Support& true_support);

/// Ordinary least squares packaged as a (dense) SparseEstimate.
SparseEstimate plain_lse(const SvdFactors& svd, const Vector& y);

/// soft_threshold(x_ls, lambda) for each lambda of an ascending grid.
std::vector<Vector> solution_path(const Vector& x_ls, std::span<const double> lambda_grid);

}  // namespace lpsparse
