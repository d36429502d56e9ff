#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "lpsparse/errors.hpp"
#include "lpsparse/harness.hpp"
#include "oracles.hpp"

using namespace lpsparse;

namespace {

/// One-parameter problem y = a x0 + v with a Gaussian column.
Problem scalar_problem(Index n_obs, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(n_obs, 1);
    for (Index i = 0; i < n_obs; ++i) a(i, 0) = rng.normal();
    Vector x(1);
    x << 1.0;
    return make_problem(std::move(a), std::move(x), 1.0, rng, seed);
}

bool same_records(const MonteCarloReport& a, const MonteCarloReport& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const auto& r = a.records[i];
        const auto& s = b.records[i];
        if (r.sq_error != s.sq_error || r.support_exact != s.support_exact ||
            r.oracle_match != s.oracle_match || r.feasible != s.feasible || r.failed != s.failed) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("monte_carlo_slack") {
    CHECK(monte_carlo_slack(2000) == doctest::Approx(3.0 * std::sqrt(0.25 / 2000.0)));
    CHECK_THROWS_AS(monte_carlo_slack(0), DomainError);
}

TEST_CASE("run_mse_experiment: paired, reproducible, order independent") {
    MseExperimentConfig c;
    c.n_grid = {50, 200};
    c.methods = {Method::Lse, Method::LpRelse, Method::OracleLse, Method::Lasso, Method::AdaLasso};
    c.trials = 20;
    c.base_seed = 9;
    const MonteCarloReport serial = run_mse_experiment(c);
    c.jobs = 4;
    const MonteCarloReport threaded = run_mse_experiment(c);
    CHECK(same_records(serial, threaded));
    REQUIRE(serial.rows.size() == 10);
    for (const auto& row : serial.rows) CHECK(row.failed == 0);

    for (Index n : c.n_grid) {
        CHECK(serial.find(n, Method::OracleLse)->mse <= serial.find(n, Method::Lse)->mse);
        CHECK(serial.find(n, Method::OracleLse)->oracle_match_rate == 1.0);
    }
    for (const auto& r : serial.records) {
        CHECK(r.sq_error >= 0.0);
        if (r.method == Method::LpRelse && r.support_exact) CHECK(r.oracle_match);
    }
}

TEST_CASE("run_mse_experiment: single trial reproduces bit-exactly") {
    MseExperimentConfig c;
    c.n_grid = {100};
    c.methods = {Method::LpRelse, Method::AdaLasso};
    c.trials = 1;
    c.base_seed = 1234;
    CHECK(same_records(run_mse_experiment(c), run_mse_experiment(c)));
}

TEST_CASE("run_mse_experiment: usage errors") {
    MseExperimentConfig c;
    c.n_grid = {50};
    c.methods = {Method::Lse};
    c.trials = 0;
    CHECK_THROWS_AS(run_mse_experiment(c), DomainError);
    c.trials = 1;
    c.n_grid = {5};
    CHECK_THROWS_AS(run_mse_experiment(c), DomainError);
    c.n_grid = {};
    CHECK_THROWS_AS(run_mse_experiment(c), DomainError);
}

TEST_CASE("run_support_recovery: portions and proxy") {
    SupportRecoveryConfig c;
    c.n_grid = {20, 50, 500};
    c.epsilons = {0.125, 0.5};
    c.trials = 40;
    const SupportRecoveryReport r = run_support_recovery(c);
    REQUIRE(r.rows.size() == 6);
    for (const auto& row : r.rows) {
        CHECK(row.portion >= 0.0);
        CHECK(row.portion <= 1.0);
        CHECK(row.oracle_match_rate >= row.portion);
    }
    CHECK(r.find(500, 0.5)->portion > r.find(20, 0.5)->portion);
    CHECK(r.find(20, 0.5)->lambda == doctest::Approx(compute_lambda(8, 20, 0.5)));
    const double proxy = r.summability_proxy(0.5);
    CHECK(proxy == doctest::Approx((1 - r.find(20, 0.5)->portion) + (1 - r.find(50, 0.5)->portion) +
                                   (1 - r.find(500, 0.5)->portion)));
    c.epsilons = {1.0};
    CHECK_THROWS_AS(run_support_recovery(c), DomainError);
}

TEST_CASE("noiseless problems recover the support once lambda < x0") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Problem p = gen_experiment1(60, seed);
        p.y = p.a * p.x_true;
        EstimatorConfig c;
        c.lambda_override = 0.9 * p.x0_min();
        CHECK(estimate(p.a, p.y, c).support_lp == p.true_support);
    }
}

TEST_CASE("check_feasibility_bound: huge lambda is trivially feasible") {
    std::vector<Problem> problems;
    for (std::uint64_t s = 0; s < 20; ++s) problems.push_back(gen_experiment1(50, s));
    EstimatorConfig c;
    c.lambda_override = 1e3;
    const FeasibilityReport r = check_feasibility_bound(problems, c);
    CHECK(r.frequency == 1.0);
    CHECK(r.mean_bound == doctest::Approx(1.0));
    CHECK(std::isnan(r.mean_asymptotic_bound));
    CHECK(r.holds());
}

TEST_CASE("check_feasibility_bound: scalar problem against the exact Gaussian tail") {
    const Index n_obs = 50;
    const std::size_t m = 4000;
    std::vector<Problem> problems;
    double exact = 0.0;
    EstimatorConfig c;
    c.lambda_override = 0.2;
    for (std::size_t t = 0; t < m; ++t) {
        problems.push_back(scalar_problem(n_obs, t));
        const double sigma = problems.back().a.col(0).norm();
        exact += oracle::scalar_feasibility_probability(0.2, sigma);
        // The finite-sample bound never exceeds the exact probability.
        CHECK(feasibility_lower_bound(1, 0.2, sigma) <= oracle::scalar_feasibility_probability(0.2, sigma));
    }
    exact /= static_cast<double>(m);
    const FeasibilityReport r = check_feasibility_bound(problems, c);
    const double se = std::sqrt(exact * (1 - exact) / static_cast<double>(m));
    CHECK(std::abs(r.frequency - exact) <= 2.0 * se);
    CHECK(r.holds());
}

TEST_CASE("feasibility bound formulas") {
    CHECK(feasibility_lower_bound(1, 1.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)));
    // With lambda from the schedule and sigma = c1 sqrt(N) both forms agree.
    const Index n = 8, big_n = 100;
    const double eps = 1.0 / 3.0, c1 = 0.7;
    const double lambda = compute_lambda(n, big_n, eps);
    CHECK(feasibility_lower_bound(n, lambda, c1 * std::sqrt(100.0)) ==
          doctest::Approx(asymptotic_feasibility_bound(n, c1, big_n, eps)).epsilon(1e-12));
}

TEST_CASE("check_lp_error_bound") {
    Problem p = gen_experiment1(50, 1);
    PipelineTrace t;
    t.lambda = 0.4;
    t.x_ls = p.x_true;
    t.x_lp = soft_threshold(t.x_ls, t.lambda);
    LpErrorCheck c = check_lp_error_bound(t, p);
    CHECK(c.applied);
    CHECK(c.holds);
    CHECK(c.bound == doctest::Approx(1.92));
    // Noiseless: each true coordinate shrunk by exactly lambda.
    CHECK(c.error_sq == doctest::Approx(3 * 0.16));

    t.x_ls[2] = 1.0;  // a null coordinate pushed outside the box
    t.x_lp = soft_threshold(t.x_ls, t.lambda);
    c = check_lp_error_bound(t, p);
    CHECK_FALSE(c.applied);
    CHECK(c.holds);
}

TEST_CASE("check_lse_identity") {
    Problem p = gen_experiment1(80, 2);
    SvdFactors svd = svd_thin(p.a);
    PipelineTrace t = estimate(p.a, svd, p.y, EstimatorConfig{});
    CHECK(check_lse_identity(p, svd, t) <= kLseIdentityTolerance);

    Problem quiet = p;
    quiet.noise.setZero();
    quiet.y = quiet.a * quiet.x_true;
    t = estimate(quiet.a, svd, quiet.y, EstimatorConfig{});
    CHECK((t.x_ls - quiet.x_true).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(check_lse_identity(quiet, svd, t) <= 1e-12);

    // Orthonormal design: x_ls = x0 + A^T v.
    const Matrix q = oracle::random_orthonormal(40, 4, 6);
    Rng rng(1);
    Vector x0(4);
    x0 << 1, 0, 0, -1;
    const Problem orth = make_problem(q, x0, 1.0, rng, 1);
    const SvdFactors fq = svd_thin(orth.a);
    t = estimate(orth.a, fq, orth.y, EstimatorConfig{});
    CHECK((t.x_ls - (x0 + q.transpose() * orth.noise)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("check_whitened_gaussianity: self-test and negative control") {
    Rng rng(99);
    std::vector<Vector> fresh(5000, Vector(4));
    for (auto& b : fresh)
        for (Index i = 0; i < 4; ++i) b[i] = rng.normal();
    const GaussianityReport ok = check_whitened_gaussianity(fresh);
    CHECK(ok.passes());
    CHECK(ok.cov_band == doctest::Approx(5.0 * std::sqrt(2.0 / 5000.0)));

    std::vector<Vector> scaled = fresh;
    for (auto& b : scaled) b *= 0.8;
    CHECK_FALSE(check_whitened_gaussianity(scaled).passes());

    fresh.resize(999);
    CHECK_THROWS_AS(check_whitened_gaussianity(fresh), DomainError);
}

TEST_CASE("run_bound_study: experiment 1 at moderate scale") {
    BoundStudyConfig c;
    c.n_obs = 100;
    c.trials = 2000;
    c.jobs = 4;
    const BoundStudy s = run_bound_study(c);
    CHECK(s.max_identity_deviation <= kLseIdentityTolerance);
    CHECK(s.lp_violations == 0);
    CHECK(s.lp_applied > 0);
    CHECK(s.worst_lp_ratio <= 1.0);
    CHECK(s.feasibility.holds());
    REQUIRE(s.whitened);
    CHECK(s.whitened->passes());
    REQUIRE(s.unwhitened_control);
    CHECK_FALSE(s.unwhitened_control->passes());

    c.trials = 10;
    CHECK_FALSE(run_bound_study(c).whitened);
}

TEST_CASE("gram_bound_constants: closed form") {
    const SinusoidDict d({1.0, 2.0}, 0.1, 10);
    const Matrix c = gram_bound_constants(d);
    auto term = [](double th) { return 2.0 / (2.0 * std::abs(std::sin(th / 2.0))) + 1.0; };
    CHECK(c(0, 0) == doctest::Approx(0.5 * term(0.2)));
    CHECK(c(1, 1) == doctest::Approx(0.5 * term(0.4)));
    CHECK(c(0, 1) == doctest::Approx(0.5 * (term(0.1) + term(0.3))));
    CHECK(c(1, 0) == doctest::Approx(c(0, 1)));
}

TEST_CASE("check_gram_bounds: standard dictionary and single frequency") {
    const std::vector<Index> grid{100, 1000, 20000};
    const GramBoundReport r = check_gram_bounds(SinusoidDict::standard(10), grid);
    CHECK(r.violations.empty());
    REQUIRE(r.rows.size() == 3);
    for (const auto& row : r.rows) {
        CHECK(row.worst_offdiag_ratio <= 1.0);
        CHECK(row.min_diag_slack >= 0.0);
        CHECK(row.lambda_min >= row.gershgorin_empirical - 1e-6);
        CHECK(row.gershgorin_empirical >= row.gershgorin_analytic);
    }
    CHECK(r.rows.back().gershgorin_analytic > 0.0);

    // The library's running sum matches a from-scratch build of A^T A.
    const Matrix a = build_sinusoid_matrix(SinusoidDict::standard(100));
    const Matrix g = a.transpose() * a;
    CHECK(r.rows.front().lambda_min ==
          doctest::Approx(Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues().minCoeff()).epsilon(1e-9));

    const SinusoidDict single({0.7}, 0.1, 10);
    const std::vector<Index> small{1, 7, 50, 333};
    const GramBoundReport s = check_gram_bounds(single, small);
    CHECK(s.violations.empty());
    for (const auto& row : s.rows) {
        double sum = 0.0;
        for (Index t = 1; t <= row.n_obs; ++t) sum += std::pow(std::sin(0.07 * t), 2);
        CHECK(row.lambda_min == doctest::Approx(sum));
        CHECK(sum >= 0.5 * row.n_obs - s.constants(0, 0));
    }
}

TEST_CASE("select_by_cv: single candidate, ties, and fold errors") {
    const Problem p = gen_experiment1(60, 4);
    const std::vector<double> one{0.25};
    CHECK(select_by_cv(CvParam::Epsilon, one, p.a, p.y, 1).chosen == 0.25);

    // Candidates large enough that every fit is zero give identical losses.
    const std::vector<double> tie{0.9, 0.95, 0.92};
    const CvGrid g = select_by_cv(CvParam::Epsilon, tie, p.a, p.y, 1);
    CHECK(g.mean_loss.size() == 3);
    if (g.mean_loss[0] == g.mean_loss[1] && g.mean_loss[1] == g.mean_loss[2]) {
        CHECK(g.chosen == 0.9);
    }
    const double best = *std::min_element(g.mean_loss.begin(), g.mean_loss.end());
    const auto idx = std::find(tie.begin(), tie.end(), g.chosen) - tie.begin();
    CHECK(g.mean_loss[static_cast<std::size_t>(idx)] == best);

    const Problem tiny = gen_experiment1(9, 1);
    CHECK_THROWS_AS(select_by_cv(CvParam::Epsilon, one, tiny.a, tiny.y, 1), DomainError);
}

TEST_CASE("cross_validate: reproducible, sized, and sane at large N") {
    CvConfig c;
    c.param = CvParam::Epsilon;
    c.candidates = {0.125, 0.25, 0.5};
    c.n_obs = 200;
    c.trials = 10;
    c.jobs = 3;
    const CvStudy a = cross_validate(c);
    c.jobs = 1;
    const CvStudy b = cross_validate(c);
    REQUIRE(a.trials.size() + a.excluded == 10);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].test_error == b.trials[i].test_error);
        CHECK(a.trials[i].grid.chosen == b.trials[i].grid.chosen);
        CHECK(std::find(c.candidates.begin(), c.candidates.end(), a.trials[i].grid.chosen) !=
              c.candidates.end());
        CHECK(a.trials[i].test_seed == a.trials[i].train_seed + kTestSeedOffset);
    }

    c.n_obs = 9;
    CHECK_THROWS_AS(cross_validate(c), DomainError);
    c.n_obs = 100;
    c.candidates = {};
    CHECK_THROWS_AS(cross_validate(c), DomainError);
    c.candidates = {0.0};
    CHECK_THROWS_AS(cross_validate(c), DomainError);
}

TEST_CASE("cross_validate: LP and ADALASSO comparable at large N") {
    CvConfig c;
    c.n_obs = 500;
    c.trials = 20;
    c.jobs = 4;
    c.candidates = {0.125, 0.25, 0.5};
    const CvStudy lp = cross_validate(c);
    c.param = CvParam::Gamma;
    c.candidates = {0.5, 1.0, 2.0};
    const CvStudy ada = cross_validate(c);
    auto median = [](const CvStudy& s) {
        std::vector<double> e;
        for (const auto& t : s.trials) e.push_back(t.test_error);
        std::sort(e.begin(), e.end());
        return e[e.size() / 2];
    };
    const double m_lp = median(lp), m_ada = median(ada);
    CHECK(m_lp <= 3.0 * m_ada);
    CHECK(m_ada <= 3.0 * m_lp);
}
