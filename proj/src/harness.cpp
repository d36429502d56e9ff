#include "lpsparse/harness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "lpsparse/baselines.hpp"
#include "lpsparse/errors.hpp"
#include "parallel.hpp"

namespace lpsparse {

namespace {

double inf_distance(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

void require_grid(const std::vector<Index>& n_grid, Generator g) {
    if (n_grid.empty()) throw DomainError("N grid is empty");
    for (Index n : n_grid) {
        if (n < min_observations(g)) {
            throw DomainError("N = " + std::to_string(n) + " is too small for " +
                              std::string(to_string(g)));
        }
    }
}

struct FeasibilitySample {
    bool feasible = false;
    double bound = 0.0;
    double asymptotic_bound = 0.0;
};

FeasibilityReport summarize_feasibility(const std::vector<FeasibilitySample>& samples) {
    FeasibilityReport r;
    r.trials = samples.size();
    if (samples.empty()) return r;
    double hits = 0.0, bound = 0.0, asymptotic = 0.0;
    for (const auto& s : samples) {
        hits += s.feasible ? 1.0 : 0.0;
        bound += s.bound;
        asymptotic += s.asymptotic_bound;
    }
    const double m = static_cast<double>(samples.size());
    r.frequency = hits / m;
    r.mean_bound = bound / m;
    r.mean_asymptotic_bound = asymptotic / m;
    r.slack = monte_carlo_slack(samples.size());
    return r;
}

FeasibilitySample feasibility_sample(const Problem& p, const SvdFactors& svd, const Vector& x_ls,
                                     double lambda, const EstimatorConfig& config) {
    FeasibilitySample s;
    s.feasible = inf_distance(x_ls, p.x_true) <= lambda;
    s.bound = feasibility_lower_bound(p.n_params(), lambda, svd.sigma_min());
    s.asymptotic_bound =
        config.lambda_override
            ? std::numeric_limits<double>::quiet_NaN()
            : asymptotic_feasibility_bound(p.n_params(), richness_certificate(svd, p.n_obs()).c1_hat,
                                        p.n_obs(), config.epsilon);
    return s;
}

}  // namespace

double monte_carlo_slack(std::size_t trials, double z) {
    if (trials == 0) throw DomainError("monte_carlo_slack: no trials");
    return z * std::sqrt(0.25 / static_cast<double>(trials));
}

// ---------------------------------------------------------------------------

const MethodSummary* MonteCarloReport::find(Index n_obs, Method method) const {
    for (const auto& r : rows) {
        if (r.n_obs == n_obs && r.method == method) return &r;
    }
    return nullptr;
}

void MseExperimentConfig::validate() const {
    require_grid(n_grid, generator);
    if (methods.empty()) throw DomainError("no methods selected");
    if (trials < 1) throw DomainError("trials must be at least 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
}

MonteCarloReport run_mse_experiment(const MseExperimentConfig& config) {
    config.validate();
    const std::size_t n_methods = config.methods.size();
    const std::size_t tasks = config.n_grid.size() * config.trials;
    std::vector<TrialRecord> records(tasks * n_methods);

    EstimatorConfig lp_config;
    lp_config.epsilon = config.epsilon;

    detail::parallel_for(tasks, config.jobs, [&](std::size_t task) {
        const Index n_obs = config.n_grid[task / config.trials];
        const std::size_t t = task % config.trials;
        const std::uint64_t seed = trial_seed(config.base_seed, t);
        TrialRecord* out = &records[task * n_methods];

        for (std::size_t k = 0; k < n_methods; ++k) {
            out[k].n_obs = n_obs;
            out[k].method = config.methods[k];
            out[k].trial = t;
            out[k].seed = seed;
        }

        const Problem p = generate(config.generator, n_obs, seed);
        SvdFactors svd;
        Vector x_ls;
        SparseEstimate oracle;
        try {
            svd = svd_thin(p.a);
            x_ls = least_squares(svd, p.y);
            oracle = oracle_lse(p.a, p.y, p.true_support);
        } catch (const NumericalError&) {
            for (std::size_t k = 0; k < n_methods; ++k) out[k].failed = true;
            return;
        }
        const double lambda = resolve_lambda(lp_config, p.n_params(), n_obs);
        const bool feasible = inf_distance(x_ls, p.x_true) <= lambda;

        for (std::size_t k = 0; k < n_methods; ++k) {
            TrialRecord& r = out[k];
            r.lambda = lambda;
            r.feasible = feasible;
            r.sigma_min = svd.sigma_min();
            r.x0_min = p.x0_min();
            SparseEstimate est;
            try {
                switch (r.method) {
                    case Method::Lse: est = plain_lse(svd, p.y); break;
                    case Method::LpRelse: est = estimate(p.a, svd, p.y, lp_config).final_estimate(); break;
                    case Method::OracleLse: est = oracle; break;
                    case Method::Lasso: est = lasso_sqrt_n(p.a, p.y); break;
                    case Method::AdaLasso: est = adalasso(p.a, p.y, config.gamma, n_obs); break;
                }
            } catch (const NumericalError&) {
                r.failed = true;
                continue;
            }
            r.sq_error = (est.x - p.x_true).squaredNorm();
            r.support_exact = est.support == p.true_support;
            r.oracle_match = inf_distance(est.x, oracle.x) <= kOracleMatchTolerance;
        }
    });

    MonteCarloReport report;
    for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
        for (std::size_t k = 0; k < n_methods; ++k) {
            MethodSummary s;
            s.n_obs = config.n_grid[g];
            s.method = config.methods[k];
            double err = 0.0, exact = 0.0, match = 0.0, feas = 0.0;
            for (std::size_t t = 0; t < config.trials; ++t) {
                const TrialRecord& r = records[(g * config.trials + t) * n_methods + k];
                if (r.failed) {
                    ++s.failed;
                    continue;
                }
                ++s.trials;
                err += r.sq_error;
                exact += r.support_exact ? 1.0 : 0.0;
                match += r.oracle_match ? 1.0 : 0.0;
                feas += r.feasible ? 1.0 : 0.0;
            }
            const double m = static_cast<double>(s.trials);
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s.mse = s.trials ? err / m : nan;
            s.recovery_portion = s.trials ? exact / m : nan;
            s.oracle_match_rate = s.trials ? match / m : nan;
            s.feasibility = s.trials ? feas / m : nan;
            report.rows.push_back(s);
        }
    }
    report.records = std::move(records);
    return report;
}

// ---------------------------------------------------------------------------

const SupportRecoveryRow* SupportRecoveryReport::find(Index n_obs, double epsilon) const {
    for (const auto& r : rows) {
        if (r.n_obs == n_obs && r.epsilon == epsilon) return &r;
    }
    return nullptr;
}

double SupportRecoveryReport::summability_proxy(double epsilon) const {
    double sum = 0.0;
    for (const auto& r : rows) {
        if (r.epsilon == epsilon && r.trials > 0) sum += 1.0 - r.portion;
    }
    return sum;
}

void SupportRecoveryConfig::validate() const {
    require_grid(n_grid, generator);
    if (epsilons.empty()) throw DomainError("no epsilon values given");
    for (double e : epsilons) {
        if (!(e > 0.0 && e < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    }
    if (trials < 1) throw DomainError("trials must be at least 1");
}

SupportRecoveryReport run_support_recovery(const SupportRecoveryConfig& config) {
    config.validate();
    struct Outcome {
        bool failed = false;
        bool exact = false;
        bool feasible = false;
        bool oracle_match = false;
    };
    const std::size_t n_eps = config.epsilons.size();
    const std::size_t tasks = config.n_grid.size() * config.trials;
    std::vector<Outcome> outcomes(tasks * n_eps);

    detail::parallel_for(tasks, config.jobs, [&](std::size_t task) {
        const Index n_obs = config.n_grid[task / config.trials];
        const std::size_t t = task % config.trials;
        Outcome* out = &outcomes[task * n_eps];
        const Problem p = generate(config.generator, n_obs, trial_seed(config.base_seed, t));
        try {
            const SvdFactors svd = svd_thin(p.a);
            const SparseEstimate oracle = oracle_lse(p.a, p.y, p.true_support);
            for (std::size_t e = 0; e < n_eps; ++e) {
                EstimatorConfig ec;
                ec.epsilon = config.epsilons[e];
                const PipelineTrace trace = estimate(p.a, svd, p.y, ec);
                out[e].exact = trace.support_lp == p.true_support;
                out[e].feasible = inf_distance(trace.x_ls, p.x_true) <= trace.lambda;
                out[e].oracle_match = inf_distance(trace.x_rels, oracle.x) <= kOracleMatchTolerance;
            }
        } catch (const NumericalError&) {
            for (std::size_t e = 0; e < n_eps; ++e) out[e].failed = true;
        }
    });

    SupportRecoveryReport report;
    for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
        for (std::size_t e = 0; e < n_eps; ++e) {
            SupportRecoveryRow row;
            row.n_obs = config.n_grid[g];
            row.epsilon = config.epsilons[e];
            row.lambda = compute_lambda(parameter_count(config.generator), row.n_obs, row.epsilon);
            double exact = 0.0, feas = 0.0, match = 0.0;
            for (std::size_t t = 0; t < config.trials; ++t) {
                const Outcome& o = outcomes[(g * config.trials + t) * n_eps + e];
                if (o.failed) {
                    ++row.failed;
                    continue;
                }
                ++row.trials;
                exact += o.exact ? 1.0 : 0.0;
                feas += o.feasible ? 1.0 : 0.0;
                match += o.oracle_match ? 1.0 : 0.0;
            }
            if (row.trials) {
                const double m = static_cast<double>(row.trials);
                row.portion = exact / m;
                row.feasibility = feas / m;
                row.oracle_match_rate = match / m;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

double feasibility_lower_bound(Index n, double lambda, double sigma_min) {
    const double dn = static_cast<double>(n);
    return 1.0 - dn * std::exp(-lambda * lambda * sigma_min * sigma_min / (2.0 * dn));
}

double asymptotic_feasibility_bound(Index n, double c1, Index n_obs, double epsilon) {
    return 1.0 - static_cast<double>(n) *
                     std::exp(-c1 * c1 * std::pow(static_cast<double>(n_obs), epsilon));
}

FeasibilityReport check_feasibility_bound(std::span<const Problem> problems,
                                          const EstimatorConfig& config) {
    if (problems.empty()) throw DomainError("check_feasibility_bound: no problems");
    std::vector<FeasibilitySample> samples;
    samples.reserve(problems.size());
    for (const Problem& p : problems) {
        const SvdFactors svd = svd_thin(p.a);
        const Vector x_ls = least_squares(svd, p.y);
        const double lambda = resolve_lambda(config, p.n_params(), p.n_obs());
        samples.push_back(feasibility_sample(p, svd, x_ls, lambda, config));
    }
    return summarize_feasibility(samples);
}

LpErrorCheck check_lp_error_bound(const PipelineTrace& trace, const Problem& problem) {
    LpErrorCheck c;
    c.applied = inf_distance(trace.x_ls, problem.x_true) <= trace.lambda;
    c.error_sq = (trace.x_lp - problem.x_true).squaredNorm();
    c.bound = 4.0 * static_cast<double>(problem.sparsity()) * trace.lambda * trace.lambda;
    c.holds = !c.applied || c.error_sq <= c.bound + kLpBoundCushion;
    return c;
}

double check_lse_identity(const Problem& problem, const SvdFactors& svd, const PipelineTrace& trace) {
    const Vector projected = svd.u.transpose() * problem.noise;
    const Vector predicted = problem.x_true + svd.v * projected.cwiseQuotient(svd.sigma);
    return inf_distance(trace.x_ls, predicted);
}

Vector whitened_residual(const SvdFactors& svd, const Vector& x_ls, const Vector& x_true) {
    return svd.sigma.asDiagonal() * (svd.v.transpose() * (x_ls - x_true));
}

GaussianityReport check_whitened_gaussianity(std::span<const Vector> samples) {
    if (samples.size() < 1000) {
        throw DomainError("check_whitened_gaussianity: need at least 1000 samples");
    }
    const Index n = samples.front().size();
    const double m = static_cast<double>(samples.size());
    Vector mean = Vector::Zero(n);
    for (const Vector& b : samples) {
        if (b.size() != n) throw DomainError("check_whitened_gaussianity: ragged samples");
        mean += b;
    }
    mean /= m;
    Matrix cov = Matrix::Zero(n, n);
    for (const Vector& b : samples) {
        const Vector c = b - mean;
        cov.noalias() += c * c.transpose();
    }
    cov /= (m - 1.0);

    GaussianityReport r;
    r.samples = samples.size();
    r.max_mean_deviation = mean.cwiseAbs().maxCoeff();
    r.mean_band = 5.0 / std::sqrt(m);
    r.max_cov_deviation = (cov - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    r.cov_band = 5.0 * std::sqrt(2.0 / m);
    return r;
}

BoundStudy run_bound_study(const BoundStudyConfig& config) {
    config.estimator.validate();
    if (config.trials < 1) throw DomainError("trials must be at least 1");
    require_grid({config.n_obs}, config.generator);

    struct Sample {
        double identity = 0.0;
        LpErrorCheck lp;
        FeasibilitySample feasibility;
        Vector whitened;
        Vector unwhitened;
    };
    std::vector<Sample> samples(config.trials);

    detail::parallel_for(config.trials, config.jobs, [&](std::size_t t) {
        const Problem p = generate(config.generator, config.n_obs, trial_seed(config.base_seed, t));
        const SvdFactors svd = svd_thin(p.a);
        const PipelineTrace trace = estimate(p.a, svd, p.y, config.estimator);
        Sample& s = samples[t];
        s.identity = check_lse_identity(p, svd, trace);
        s.lp = check_lp_error_bound(trace, p);
        s.feasibility = feasibility_sample(p, svd, trace.x_ls, trace.lambda, config.estimator);
        s.whitened = whitened_residual(svd, trace.x_ls, p.x_true);
        s.unwhitened = svd.v.transpose() * (trace.x_ls - p.x_true);
    });

    BoundStudy study;
    study.n_obs = config.n_obs;
    study.trials = config.trials;
    std::vector<FeasibilitySample> feas;
    std::vector<Vector> whitened, unwhitened;
    feas.reserve(samples.size());
    whitened.reserve(samples.size());
    unwhitened.reserve(samples.size());
    for (Sample& s : samples) {
        study.max_identity_deviation = std::max(study.max_identity_deviation, s.identity);
        if (s.lp.applied) {
            ++study.lp_applied;
            if (!s.lp.holds) ++study.lp_violations;
            if (s.lp.bound > 0.0) {
                study.worst_lp_ratio = std::max(study.worst_lp_ratio, s.lp.error_sq / s.lp.bound);
            }
        }
        feas.push_back(s.feasibility);
        whitened.push_back(std::move(s.whitened));
        unwhitened.push_back(std::move(s.unwhitened));
    }
    study.feasibility = summarize_feasibility(feas);
    if (samples.size() >= 1000) {
        study.whitened = check_whitened_gaussianity(whitened);
        study.unwhitened_control = check_whitened_gaussianity(unwhitened);
    }
    return study;
}

// ---------------------------------------------------------------------------

Matrix gram_bound_constants(const SinusoidDict& dict) {
    const Index n = dict.n_freqs();
    const double ts = dict.sample_period();
    const auto& w = dict.freqs();
    // 2 / |1 - e^{i theta}| + 1
    auto term = [](double theta) {
        return 2.0 / std::abs(1.0 - std::polar(1.0, theta)) + 1.0;
    };
    Matrix c(n, n);
    for (Index i = 0; i < n; ++i) {
        const double wi = w[static_cast<std::size_t>(i)];
        for (Index j = 0; j < n; ++j) {
            const double wj = w[static_cast<std::size_t>(j)];
            c(i, j) = i == j ? 0.5 * term(2.0 * wi * ts)
                             : 0.5 * (term((wi - wj) * ts) + term((wi + wj) * ts));
        }
    }
    return c;
}

GramBoundReport check_gram_bounds(const SinusoidDict& dict, std::span<const Index> n_grid) {
    if (n_grid.empty()) throw DomainError("check_gram_bounds: empty N grid");
    std::vector<Index> grid(n_grid.begin(), n_grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < 1) throw DomainError("check_gram_bounds: N must be positive");

    const Index n = dict.n_freqs();
    const double ts = dict.sample_period();
    const auto& w = dict.freqs();

    GramBoundReport report;
    report.constants = gram_bound_constants(dict);
    const Matrix& c = report.constants;
    const Vector c_row_sums = c.rowwise().sum();

    // Running sum of outer products of rows, snapshotted at each grid N.
    Matrix gram = Matrix::Zero(n, n);
    Vector row(n);
    std::size_t next = 0;
    for (Index t = 1; next < grid.size(); ++t) {
        for (Index k = 0; k < n; ++k) {
            row[k] = std::sin(static_cast<double>(t) * w[static_cast<std::size_t>(k)] * ts);
        }
        gram.selfadjointView<Eigen::Upper>().rankUpdate(row);
        if (t != grid[next]) continue;
        ++next;

        const Matrix g = gram.selfadjointView<Eigen::Upper>();
        GramBoundRow r;
        r.n_obs = t;
        const double half_n = 0.5 * static_cast<double>(t);
        r.min_diag_slack = std::numeric_limits<double>::infinity();
        r.gershgorin_empirical = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < n; ++i) {
            const double diag_rhs = half_n - c(i, i);
            r.min_diag_slack = std::min(r.min_diag_slack, g(i, i) - diag_rhs);
            if (!(g(i, i) >= diag_rhs)) {
                ++r.diag_violations;
                report.violations.push_back({t,
                                             "(A^T A)_" + std::to_string(i + 1) + "," +
                                                 std::to_string(i + 1) + " >= N/2 - C_ii",
                                             g(i, i), diag_rhs});
            }
            double off_sum = 0.0;
            for (Index j = 0; j < n; ++j) {
                if (j == i) continue;
                off_sum += std::abs(g(i, j));
                if (j < i) continue;
                r.worst_offdiag_ratio = std::max(r.worst_offdiag_ratio, std::abs(g(i, j)) / c(i, j));
                if (!(std::abs(g(i, j)) <= c(i, j))) {
                    ++r.offdiag_violations;
                    report.violations.push_back({t,
                                                 "|(A^T A)_" + std::to_string(i + 1) + "," +
                                                     std::to_string(j + 1) + "| <= C_ij",
                                                 std::abs(g(i, j)), c(i, j)});
                }
            }
            r.gershgorin_empirical = std::min(r.gershgorin_empirical, g(i, i) - off_sum);
        }
        r.gershgorin_analytic = half_n - c_row_sums.maxCoeff();
        r.lambda_min = Eigen::SelfAdjointEigenSolver<Matrix>(g, Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .minCoeff();
        // Eigenvalue solver round-off is relative to the largest eigenvalue.
        const double eig_tol = 1e-9 * std::max(1.0, g.diagonal().maxCoeff());
        if (!(r.lambda_min >= r.gershgorin_empirical - eig_tol)) {
            report.violations.push_back({t, "lambda_min(A^T A) >= Gershgorin lower bound",
                                         r.lambda_min, r.gershgorin_empirical});
        }
        if (t >= kGershgorinAssertFrom && !(r.gershgorin_analytic > 0.0)) {
            report.violations.push_back(
                {t, "N/2 - max_i sum_j C_ij > 0", r.gershgorin_analytic, 0.0});
        }
        report.rows.push_back(r);
    }
    return report;
}

// ---------------------------------------------------------------------------

std::string_view to_string(CvParam p) { return p == CvParam::Epsilon ? "epsilon" : "gamma"; }

std::optional<CvParam> parse_cv_param(std::string_view tag) {
    if (tag == "epsilon") return CvParam::Epsilon;
    if (tag == "gamma") return CvParam::Gamma;
    return std::nullopt;
}

SparseEstimate fit_with_param(CvParam param, double value, const Matrix& a, const Vector& y) {
    if (param == CvParam::Epsilon) {
        EstimatorConfig config;
        config.epsilon = value;
        return estimate(a, y, config).final_estimate();
    }
    return adalasso(a, y, value, a.rows());
}

CvGrid select_by_cv(CvParam param, std::span<const double> candidates, const Matrix& a,
                    const Vector& y, std::uint64_t shuffle_seed, std::size_t folds) {
    if (candidates.empty()) throw DomainError("cross validation: no candidates");
    if (folds < 2) throw DomainError("cross validation: need at least 2 folds");
    const auto n_rows = static_cast<std::size_t>(a.rows());
    if (n_rows < 2 * folds) {
        throw DomainError("cross validation: N = " + std::to_string(n_rows) + " is too small for " +
                          std::to_string(folds) + " folds");
    }

    Rng rng(shuffle_seed);
    const std::vector<std::size_t> perm = rng.permutation(n_rows);

    CvGrid grid;
    grid.param = param;
    grid.candidates.assign(candidates.begin(), candidates.end());
    grid.mean_loss.assign(candidates.size(), 0.0);

    const std::size_t base = n_rows / folds;
    const std::size_t extra = n_rows % folds;
    std::size_t start = 0;
    for (std::size_t k = 0; k < folds; ++k) {
        const std::size_t size = base + (k < extra ? 1 : 0);
        std::vector<Index> val_rows, train_rows;
        for (std::size_t i = 0; i < n_rows; ++i) {
            const auto row = static_cast<Index>(perm[i]);
            (i >= start && i < start + size ? val_rows : train_rows).push_back(row);
        }
        start += size;

        const Matrix a_train = a(train_rows, Eigen::all);
        const Vector y_train = y(train_rows);
        const Matrix a_val = a(val_rows, Eigen::all);
        const Vector y_val = y(val_rows);
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const SparseEstimate est = fit_with_param(param, candidates[c], a_train, y_train);
            grid.mean_loss[c] += (y_val - a_val * est.x).squaredNorm();
        }
    }

    std::size_t best = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        grid.mean_loss[c] /= static_cast<double>(folds);
        if (c == 0) continue;
        if (grid.mean_loss[c] < grid.mean_loss[best] ||
            (grid.mean_loss[c] == grid.mean_loss[best] && candidates[c] < candidates[best])) {
            best = c;
        }
    }
    grid.chosen = candidates[best];
    return grid;
}

void CvConfig::validate() const {
    if (candidates.empty()) throw DomainError("cross validation: no candidates");
    for (double v : candidates) {
        if (param == CvParam::Epsilon && !(v > 0.0 && v < 1.0)) {
            throw DomainError("cross validation: epsilon candidates must lie in (0, 1)");
        }
        if (param == CvParam::Gamma && !(v > 0.0)) {
            throw DomainError("cross validation: gamma candidates must be positive");
        }
    }
    if (n_obs < 10) throw DomainError("cross validation: N must be at least 10 for 5 folds");
    require_grid({n_obs}, generator);
    if (trials < 1) throw DomainError("trials must be at least 1");
    if (folds < 2) throw DomainError("cross validation: need at least 2 folds");
}

CvStudy cross_validate(const CvConfig& config) {
    config.validate();
    std::vector<std::optional<CvTrial>> slots(config.trials);

    detail::parallel_for(config.trials, config.jobs, [&](std::size_t t) {
        CvTrial trial;
        trial.trial = t;
        trial.train_seed = trial_seed(config.base_seed, t);
        trial.test_seed = trial.train_seed + kTestSeedOffset;
        const Problem train = generate(config.generator, config.n_obs, trial.train_seed);
        const Problem test = generate(config.generator, config.n_obs, trial.test_seed);
        try {
            trial.grid = select_by_cv(config.param, config.candidates, train.a, train.y,
                                      trial.train_seed ^ kShuffleSeedMask, config.folds);
            const SparseEstimate est =
                fit_with_param(config.param, trial.grid.chosen, test.a, test.y);
            trial.test_error = (est.x - test.x_true).squaredNorm();
        } catch (const NumericalError&) {
            return;
        }
        slots[t] = std::move(trial);
    });

    CvStudy study;
    study.config = config;
    for (auto& s : slots) {
        if (s) {
            study.trials.push_back(std::move(*s));
        } else {
            ++study.excluded;
        }
    }
    return study;
}

}  // namespace lpsparse
