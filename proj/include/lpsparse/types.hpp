#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace lpsparse {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sorted, duplicate-free, 0-based column indices.
using Support = std::vector<Index>;

enum class Method { Lse, LpRelse, OracleLse, Lasso, AdaLasso };

/// Canonical tags: LSE, LP_RELSE, ORACLE_LSE, LASSO, ADALASSO.
std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view tag);

/// Uniform result container for every estimator. `x` is zero off `support`.
struct SparseEstimate {
    Vector x;
    Support support;
    Method method = Method::Lse;
};

/// Indices of the nonzero entries of `x`, i.e. those with |x_i| > cushion.
Support support_of(const Vector& x, double cushion = 0.0);

/// Throws DomainError unless every entry is finite.
void require_finite(const Matrix& m, std::string_view what);

}  // namespace lpsparse
