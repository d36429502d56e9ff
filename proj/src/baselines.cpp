#include "lpsparse/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpsparse/errors.hpp"
#include "lpsparse/estimator.hpp"
#include "lpsparse/linalg.hpp"

namespace lpsparse {

namespace {

double shrink(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

}  // namespace

void LassoConfig::validate(Index n) const {
    if (!(reg_param >= 0.0) || !std::isfinite(reg_param)) {
        throw DomainError("lasso: reg_param must be nonnegative and finite");
    }
    if (!(tol > 0.0)) throw DomainError("lasso: tol must be positive");
    if (max_iter < 1) throw DomainError("lasso: max_iter must be at least 1");
    if (weights) {
        if (weights->size() != n) throw DomainError("lasso: weights length mismatch");
        if (!weights->allFinite() || (weights->array() <= 0.0).any()) {
            throw DomainError("lasso: weights must be positive and finite");
        }
    }
}

double lasso_objective(const Matrix& a, const Vector& y, const Vector& x, double reg_param,
                       const Vector& weights) {
    return 0.5 * (y - a * x).squaredNorm() + reg_param * weights.cwiseProduct(x.cwiseAbs()).sum();
}

double lasso_kkt_violation(const Matrix& a, const Vector& y, const Vector& x, double reg_param,
                           const Vector& weights) {
    const Vector grad = a.transpose() * (y - a * x);
    double worst = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
        const double bound = reg_param * weights[i];
        const double v = x[i] == 0.0 ? std::max(0.0, std::abs(grad[i]) - bound)
                                     : std::abs(grad[i] - std::copysign(bound, x[i]));
        worst = std::max(worst, v);
    }
    return worst;
}

LassoFit lasso_cd_fit(const Matrix& a, const Vector& y, const LassoConfig& config) {
    const Index n = a.cols();
    config.validate(n);
    if (y.size() != a.rows()) throw DomainError("lasso: y length mismatch");
    require_finite(a, "lasso design");

    const Vector w = config.weights ? *config.weights : Vector::Ones(n);
    // Covariance updates: grad tracks A^T (y - A x).
    const Matrix gram = a.transpose() * a;
    for (Index j = 0; j < n; ++j) {
        if (!(gram(j, j) > 0.0)) {
            throw DomainError("lasso: column " + std::to_string(j) + " is identically zero");
        }
    }
    Vector grad = a.transpose() * y;
    Vector x = Vector::Zero(n);

    LassoFit fit;
    if (config.record_objective) {
        fit.objective.push_back(lasso_objective(a, y, x, config.reg_param, w));
    }

    for (int sweep = 1; sweep <= config.max_iter; ++sweep) {
        double max_change = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double old = x[j];
            const double z = grad[j] + gram(j, j) * old;
            const double updated = shrink(z, config.reg_param * w[j]) / gram(j, j);
            const double delta = updated - old;
            if (delta != 0.0) {
                x[j] = updated;
                grad.noalias() -= gram.col(j) * delta;
                max_change = std::max(max_change, std::abs(delta));
            }
        }
        if (config.record_objective) {
            fit.objective.push_back(lasso_objective(a, y, x, config.reg_param, w));
        }
        if (max_change <= config.tol) {
            fit.sweeps = sweep;
            for (Index j = 0; j < n; ++j) {
                if (std::abs(x[j]) <= kLassoSupportCushion) x[j] = 0.0;
            }
            fit.estimate.support = support_of(x);
            fit.estimate.x = std::move(x);
            fit.estimate.method = config.weights ? Method::AdaLasso : Method::Lasso;
            return fit;
        }
    }
    throw ConvergenceError("lasso: no convergence after " + std::to_string(config.max_iter) +
                               " sweeps",
                           x, config.max_iter);
}

SparseEstimate lasso_cd(const Matrix& a, const Vector& y, const LassoConfig& config) {
    return lasso_cd_fit(a, y, config).estimate;
}

Vector adalasso_weights(const Vector& x_ls, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("adalasso: gamma must be positive");
    Vector w(x_ls.size());
    for (Index i = 0; i < x_ls.size(); ++i) {
        const double mag = std::pow(std::abs(x_ls[i]), gamma);
        w[i] = mag > 0.0 ? std::min(1.0 / mag, kWeightCap) : kWeightCap;
    }
    return w;
}

double adalasso_reg_param(Index n_obs, double gamma) {
    if (n_obs < 1) throw DomainError("adalasso: N must be positive");
    return std::pow(static_cast<double>(n_obs), 0.5 - gamma / 4.0);
}

SparseEstimate adalasso(const Matrix& a, const Vector& y, double gamma, Index n_obs) {
    const Vector x_ls = least_squares(svd_thin(a), y);
    LassoConfig config;
    config.weights = adalasso_weights(x_ls, gamma);
    config.reg_param = adalasso_reg_param(n_obs, gamma);
    SparseEstimate est = lasso_cd(a, y, config);
    est.method = Method::AdaLasso;
    return est;
}

SparseEstimate lasso_sqrt_n(const Matrix& a, const Vector& y) {
    LassoConfig config;
    config.reg_param = std::sqrt(static_cast<double>(a.rows()));
    return lasso_cd(a, y, config);
}

}  // namespace lpsparse
