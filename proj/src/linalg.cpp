#include "lpsparse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "lpsparse/errors.hpp"

namespace lpsparse {

namespace {

void require_sorted_unique(const Support& support, Index n) {
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (support[k] < 0 || support[k] >= n) {
            throw DomainError("support index " + std::to_string(support[k]) +
                              " out of range [0, " + std::to_string(n) + ")");
        }
        if (k > 0 && support[k] <= support[k - 1]) {
            throw DomainError("support must be sorted and free of duplicates");
        }
    }
}

}  // namespace

Index SvdFactors::first_deficient() const {
    if (sigma.size() == 0) return 0;
    const double cutoff = kRankTolerance * sigma_max();
    for (Index i = 0; i < sigma.size(); ++i) {
        if (!(sigma[i] > cutoff)) return i;
    }
    return -1;
}

SvdFactors svd_thin(const Matrix& a) {
    if (a.rows() < 1 || a.cols() < 1) throw DomainError("svd_thin: empty matrix");
    if (a.rows() < a.cols()) {
        throw DomainError("svd_thin: expected a tall matrix, got " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()));
    }
    require_finite(a, "svd_thin input");

    const Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("svd_thin: decomposition did not converge");
    }

    // Eigen returns descending values; reverse everything into ascending order.
    const Index n = a.cols();
    SvdFactors f;
    f.sigma = svd.singularValues().reverse();
    f.u = svd.matrixU().rowwise().reverse();
    f.v = svd.matrixV().rowwise().reverse();
    if (f.u.cols() != n || f.v.cols() != n) {
        throw NumericalError("svd_thin: unexpected factor shapes");
    }
    return f;
}

Vector least_squares(const SvdFactors& svd, const Vector& y) {
    if (y.size() != svd.rows()) {
        throw DomainError("least_squares: y has " + std::to_string(y.size()) + " entries, expected " +
                          std::to_string(svd.rows()));
    }
    if (const Index bad = svd.first_deficient(); bad >= 0) {
        throw RankDeficientError("least_squares: singular value " + std::to_string(bad) +
                                     " is below the rank tolerance",
                                 bad);
    }
    const Vector projected = svd.u.transpose() * y;
    return svd.v * projected.cwiseQuotient(svd.sigma);
}

SubsetSolution subset_least_squares(const Matrix& a, const Vector& y, const Support& support) {
    if (y.size() != a.rows()) throw DomainError("subset_least_squares: y length mismatch");
    require_sorted_unique(support, a.cols());

    SubsetSolution out{Vector::Zero(a.cols()), false};
    if (support.empty()) return out;

    const Matrix sub = a(Eigen::all, support);
    const SvdFactors f = svd_thin(sub);

    // Truncated pseudo-inverse: directions under the rank tolerance are dropped.
    const double cutoff = kRankTolerance * f.sigma_max();
    const Vector projected = f.u.transpose() * y;
    Vector scaled = Vector::Zero(projected.size());
    for (Index i = 0; i < projected.size(); ++i) {
        if (f.sigma[i] > cutoff) {
            scaled[i] = projected[i] / f.sigma[i];
        } else {
            out.rank_deficient = true;
        }
    }
    const Vector coef = f.v * scaled;
    for (std::size_t k = 0; k < support.size(); ++k) out.x[support[k]] = coef[static_cast<Index>(k)];
    return out;
}

RichnessCertificate richness_certificate(const SvdFactors& svd, Index n_rows) {
    if (n_rows < 1) throw DomainError("richness_certificate: n_rows must be positive");
    const double root = std::sqrt(static_cast<double>(n_rows));
    RichnessCertificate c;
    c.c1_hat = svd.sigma.minCoeff() / root;
    c.c2_hat = svd.sigma.maxCoeff() / root;
    c.full_rank = svd.full_rank();
    return c;
}

}  // namespace lpsparse
