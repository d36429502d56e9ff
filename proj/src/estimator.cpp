#include "lpsparse/estimator.hpp"

#include <cmath>
#include <string>

#include "lpsparse/errors.hpp"

namespace lpsparse {

void EstimatorConfig::validate() const {
    if (lambda_override) {
        if (!(*lambda_override > 0.0) || !std::isfinite(*lambda_override)) {
            throw DomainError("lambda override must be positive and finite");
        }
    } else if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
    if (noise_std_scaling && !(*noise_std_scaling > 0.0 && std::isfinite(*noise_std_scaling))) {
        throw DomainError("noise std scaling must be positive and finite");
    }
}

double compute_lambda(Index n, Index n_obs, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
    if (n < 1 || n_obs < 1) throw DomainError("compute_lambda: n and N must be positive");
    const double dn = static_cast<double>(n);
    const double dN = static_cast<double>(n_obs);
    return std::sqrt(2.0 * dn / std::pow(dN, 1.0 - epsilon));
}

double resolve_lambda(const EstimatorConfig& config, Index n, Index n_obs) {
    config.validate();
    double lambda = config.lambda_override ? *config.lambda_override
                                           : compute_lambda(n, n_obs, config.epsilon);
    if (config.noise_std_scaling) lambda *= *config.noise_std_scaling;
    return lambda;
}

Vector soft_threshold(const Vector& x_ls, double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("soft_threshold: lambda must be nonnegative");
    Vector out(x_ls.size());
    for (Index i = 0; i < x_ls.size(); ++i) {
        const double xi = x_ls[i];
        if (std::abs(xi) <= lambda) {
            out[i] = 0.0;
        } else {
            out[i] = xi > 0.0 ? xi - lambda : xi + lambda;
        }
    }
    return out;
}

Support detect_support(const Vector& x_lp, double cushion) { return support_of(x_lp, cushion); }

PipelineTrace estimate(const Matrix& a, const Vector& y, const EstimatorConfig& config) {
    return estimate(a, svd_thin(a), y, config);
}

PipelineTrace estimate(const Matrix& a, const SvdFactors& svd, const Vector& y,
                       const EstimatorConfig& config) {
    if (y.size() != a.rows()) throw DomainError("estimate: y length does not match rows of A");
    PipelineTrace t;
    t.lambda = resolve_lambda(config, a.cols(), a.rows());
    t.x_ls = least_squares(svd, y);
    t.x_lp = soft_threshold(t.x_ls, t.lambda);
    t.support_lp = detect_support(t.x_lp);
    SubsetSolution refit = subset_least_squares(a, y, t.support_lp);
    t.x_rels = std::move(refit.x);
    t.rank_warning = refit.rank_deficient;
    return t;
}

SparseEstimate oracle_lse(const Matrix& a, const Vector& y, const Support& true_support) {
    SubsetSolution s = subset_least_squares(a, y, true_support);
    return {std::move(s.x), true_support, Method::OracleLse};
}

SparseEstimate plain_lse(const SvdFactors& svd, const Vector& y) {
    Vector x = least_squares(svd, y);
    Support all(static_cast<std::size_t>(x.size()));
    for (Index i = 0; i < x.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return {std::move(x), std::move(all), Method::Lse};
}

std::vector<Vector> solution_path(const Vector& x_ls, std::span<const double> lambda_grid) {
    std::vector<Vector> path;
    path.reserve(lambda_grid.size());
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        if (k > 0 && lambda_grid[k] < lambda_grid[k - 1]) {
            throw DomainError("solution_path: lambda grid must be ascending");
        }
        path.push_back(soft_threshold(x_ls, lambda_grid[k]));
    }
    return path;
}

}  // namespace lpsparse
