#pragma once

#include "lpsparse/types.hpp"

namespace lpsparse {

/// Singular values below kRankTolerance * max(sigma) count as zero.
inline constexpr double kRankTolerance = 1e-10;

/**
 * Thin SVD A = U diag(sigma) V^T of a tall N x n matrix.
 *
 * Note the ordering: sigma is stored ASCENDING (sigma[0] is the smallest
 * singular value), and the columns of u and v are permuted to match. Most
 * SVD libraries return descending values.
 */
struct SvdFactors {
    Matrix u;      // N x n, orthonormal columns
    Vector sigma;  // n, ascending, nonnegative
    Matrix v;      // n x n, orthogonal

    Index rows() const { return u.rows(); }
    Index cols() const { return v.rows(); }
    double sigma_min() const { return sigma[0]; }
    double sigma_max() const { return sigma[sigma.size() - 1]; }

    /// Index of the first singular value under the rank tolerance, or -1.
    Index first_deficient() const;
    bool full_rank() const { return first_deficient() < 0; }
};

/// Per-N constants of the "sufficiently rich" condition
/// c1 sqrt(N) <= sigma_min(A) <= sigma_max(A) <= c2 sqrt(N).
struct RichnessCertificate {
    double c1_hat = 0.0;
    double c2_hat = 0.0;
    bool full_rank = false;
};

/// Requires a.rows() >= a.cols() >= 1 and finite entries. Throws
/// NumericalError if the decomposition does not converge.
SvdFactors svd_thin(const Matrix& a);

/// V diag(sigma)^-1 U^T y. Throws RankDeficientError on a rank-deficient
/// factorization.
Vector least_squares(const SvdFactors& svd, const Vector& y);

struct SubsetSolution {
    Vector x;                     // full length n, zero off the support
    bool rank_deficient = false;  // truncated pseudo-inverse was used
};

/// Solves the least squares problem on the columns listed in `support`
/// through the pseudo-inverse of that column submatrix. An empty support
/// yields the zero vector.
SubsetSolution subset_least_squares(const Matrix& a, const Vector& y, const Support& support);

RichnessCertificate richness_certificate(const SvdFactors& svd, Index n_rows);

}  // namespace lpsparse
