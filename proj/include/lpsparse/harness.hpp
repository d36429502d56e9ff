#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpsparse/datagen.hpp"
#include "lpsparse/estimator.hpp"
#include "lpsparse/linalg.hpp"
#include "lpsparse/types.hpp"

namespace lpsparse {

/// Two LSE solves on identical supports agree to this (entrywise).
inline constexpr double kOracleMatchTolerance = 1e-10;
inline constexpr double kLseIdentityTolerance = 1e-8;
inline constexpr double kLpBoundCushion = 1e-12;

/// Monte Carlo slack: z standard errors at the worst-case variance 1/4.
double monte_carlo_slack(std::size_t trials, double z = 3.0);

/// Trial t draws its problem from seed base_seed + t.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) {
    return base_seed + static_cast<std::uint64_t>(trial);
}

// ---------------------------------------------------------------------------
// MSE curves and support recovery

struct TrialRecord {
    Index n_obs = 0;
    Method method = Method::Lse;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    bool failed = false;
    double sq_error = 0.0;       // ||x_hat - x_true||^2
    bool support_exact = false;  // support(x_hat) == true support
    bool feasible = false;       // ||x_ls - x_true||_inf <= lambda
    double lambda = 0.0;
    double sigma_min = 0.0;
    double x0_min = 0.0;
    bool oracle_match = false;   // x_hat == oracle LSE within kOracleMatchTolerance
};

struct MethodSummary {
    Index n_obs = 0;
    Method method = Method::Lse;
    std::size_t trials = 0;  // successful trials
    std::size_t failed = 0;
    double mse = 0.0;
    double recovery_portion = 0.0;
    double oracle_match_rate = 0.0;
    double feasibility = 0.0;
};

struct MonteCarloReport {
    std::vector<MethodSummary> rows;  // ordered by (N, method) as configured
    std::vector<TrialRecord> records;

    const MethodSummary* find(Index n_obs, Method method) const;
};

struct MseExperimentConfig {
    Generator generator = Generator::Experiment1;
    std::vector<Index> n_grid;
    std::vector<Method> methods;
    std::size_t trials = 50;
    std::uint64_t base_seed = 0;
    double epsilon = 1.0 / 3.0;  // LP_RELSE
    double gamma = 1.0;          // ADALASSO
    unsigned jobs = 1;

    void validate() const;
};

/// All methods see the same problem within a trial (paired comparison).
MonteCarloReport run_mse_experiment(const MseExperimentConfig& config);

struct SupportRecoveryRow {
    Index n_obs = 0;
    double epsilon = 0.0;
    double lambda = 0.0;
    std::size_t trials = 0;
    std::size_t failed = 0;
    double portion = 0.0;  // fraction of trials with recovered support == true support
    double feasibility = 0.0;
    double oracle_match_rate = 0.0;
};

struct SupportRecoveryReport {
    std::vector<SupportRecoveryRow> rows;

    const SupportRecoveryRow* find(Index n_obs, double epsilon) const;
    /// sum over the tested N of (1 - portion), for one epsilon.
    double summability_proxy(double epsilon) const;
};

struct SupportRecoveryConfig {
    Generator generator = Generator::Experiment1;
    std::vector<Index> n_grid;
    std::vector<double> epsilons;
    std::size_t trials = 200;
    std::uint64_t base_seed = 0;
    unsigned jobs = 1;

    void validate() const;
};

SupportRecoveryReport run_support_recovery(const SupportRecoveryConfig& config);

// ---------------------------------------------------------------------------
// Bound checks

/// 1 - n exp(-lambda^2 sigma^2 / (2n)).
double feasibility_lower_bound(Index n, double lambda, double sigma_min);

/// 1 - n exp(-c1^2 N^epsilon).
double asymptotic_feasibility_bound(Index n, double c1, Index n_obs, double epsilon);

struct FeasibilityReport {
    std::size_t trials = 0;
    double frequency = 0.0;
    double mean_bound = 0.0;          // per-trial averaged finite-sample bound
    double mean_asymptotic_bound = 0.0;  // NaN under a lambda override
    double slack = 0.0;

    bool holds() const { return frequency >= mean_bound - slack; }
};

FeasibilityReport check_feasibility_bound(std::span<const Problem> problems,
                                          const EstimatorConfig& config);

struct LpErrorCheck {
    bool applied = false;  // the feasibility event held
    bool holds = true;
    double error_sq = 0.0;  // ||x_lp - x_true||^2
    double bound = 0.0;     // 4 s lambda^2
};

LpErrorCheck check_lp_error_bound(const PipelineTrace& trace, const Problem& problem);

/// ||x_ls - (x_true + V Sigma^-1 U^T noise)||_inf.
double check_lse_identity(const Problem& problem, const SvdFactors& svd, const PipelineTrace& trace);

/// Sigma V^T (x_ls - x_true); standard normal for Gaussian unit-variance noise.
Vector whitened_residual(const SvdFactors& svd, const Vector& x_ls, const Vector& x_true);

struct GaussianityReport {
    std::size_t samples = 0;
    double max_mean_deviation = 0.0;
    double mean_band = 0.0;  // 5 / sqrt(M)
    double max_cov_deviation = 0.0;
    double cov_band = 0.0;   // 5 sqrt(2 / M)

    bool passes() const {
        return max_mean_deviation <= mean_band && max_cov_deviation <= cov_band;
    }
};

/// Compares sample mean and covariance against N(0, I). Needs M >= 1000.
GaussianityReport check_whitened_gaussianity(std::span<const Vector> samples);

struct BoundStudyConfig {
    Generator generator = Generator::Experiment1;
    Index n_obs = 100;
    std::size_t trials = 1000;
    std::uint64_t base_seed = 0;
    EstimatorConfig estimator;
    unsigned jobs = 1;
};

/// Streams trials through every per-trial check.
struct BoundStudy {
    Index n_obs = 0;
    std::size_t trials = 0;
    double max_identity_deviation = 0.0;
    std::size_t lp_applied = 0;
    std::size_t lp_violations = 0;
    double worst_lp_ratio = 0.0;  // max error_sq / bound over applied trials
    FeasibilityReport feasibility;
    std::optional<GaussianityReport> whitened;          // when trials >= 1000
    std::optional<GaussianityReport> unwhitened_control;  // V^T(x_ls - x_true), skips Sigma
};

BoundStudy run_bound_study(const BoundStudyConfig& config);

// ---------------------------------------------------------------------------
// Gram bounds for the sinusoid dictionary

/// C(i, j) = 1/2 [(2/|1 - e^{i(w_i-w_j)t_s}| + 1) + (2/|1 - e^{i(w_i+w_j)t_s}| + 1)], i != j
/// C(i, i) = 1/2 (2/|1 - e^{2 i w_i t_s}| + 1)
Matrix gram_bound_constants(const SinusoidDict& dict);

struct BoundViolation {
    Index n_obs = 0;
    std::string inequality;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct GramBoundRow {
    Index n_obs = 0;
    std::size_t offdiag_violations = 0;
    std::size_t diag_violations = 0;
    double worst_offdiag_ratio = 0.0;  // max |G_ij| / C_ij
    double min_diag_slack = 0.0;       // min G_ii - (N/2 - C_ii)
    double lambda_min = 0.0;           // smallest eigenvalue of A^T A
    double gershgorin_empirical = 0.0; // min_i G_ii - sum_{j != i} |G_ij|
    double gershgorin_analytic = 0.0;  // N/2 - max_i sum_j C_ij
};

struct GramBoundReport {
    Matrix constants;
    std::vector<GramBoundRow> rows;
    std::vector<BoundViolation> violations;
};

/// Gershgorin positivity (analytic bound / N > 0) is asserted for N >= this.
inline constexpr Index kGershgorinAssertFrom = 10000;

GramBoundReport check_gram_bounds(const SinusoidDict& dict, std::span<const Index> n_grid);

// ---------------------------------------------------------------------------
// Cross-validation

enum class CvParam { Epsilon, Gamma };

std::string_view to_string(CvParam p);
std::optional<CvParam> parse_cv_param(std::string_view tag);

/// Fit the LP + re-LSE estimator (epsilon) or ADALASSO (gamma) with one value.
SparseEstimate fit_with_param(CvParam param, double value, const Matrix& a, const Vector& y);

struct CvGrid {
    CvParam param = CvParam::Epsilon;
    std::vector<double> candidates;
    std::vector<double> mean_loss;  // mean over folds of ||y_val - A_val x_hat||^2
    double chosen = 0.0;            // argmin, ties to the smallest candidate
};

/// K-fold selection on one data set: rows are shuffled with `shuffle_seed`
/// and cut into contiguous blocks. Throws NumericalError when a training
/// fold is rank deficient.
CvGrid select_by_cv(CvParam param, std::span<const double> candidates, const Matrix& a,
                    const Vector& y, std::uint64_t shuffle_seed, std::size_t folds = 5);

struct CvConfig {
    CvParam param = CvParam::Epsilon;
    std::vector<double> candidates;
    Index n_obs = 100;
    std::size_t trials = 100;
    std::uint64_t base_seed = 0;
    Generator generator = Generator::Experiment1;
    std::size_t folds = 5;
    unsigned jobs = 1;

    void validate() const;
};

struct CvTrial {
    std::size_t trial = 0;
    std::uint64_t train_seed = 0;
    std::uint64_t test_seed = 0;
    CvGrid grid;
    double test_error = 0.0;  // ||x_hat - x_true||^2 on the independent test problem
};

struct CvStudy {
    CvConfig config;
    std::vector<CvTrial> trials;  // excluded trials are omitted
    std::size_t excluded = 0;     // rank-deficient training folds
};

inline constexpr std::uint64_t kTestSeedOffset = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kShuffleSeedMask = 0xD1B54A32D192ED03ULL;

CvStudy cross_validate(const CvConfig& config);

}  // namespace lpsparse
