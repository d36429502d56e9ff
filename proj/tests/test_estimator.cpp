#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lpsparse/datagen.hpp"
#include "lpsparse/errors.hpp"
#include "lpsparse/estimator.hpp"
#include "lpsparse/harness.hpp"
#include "oracles.hpp"

using namespace lpsparse;

namespace {

Vector demo_x_ls() {
    Vector x(4);
    x << 2.0, 0.5, -1.0, -1.5;
    return x;
}

}  // namespace

TEST_CASE("compute_lambda: schedule values") {
    CHECK(compute_lambda(8, 64, 1.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(compute_lambda(2, 16, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(compute_lambda(8, 1000, 1.0 / 3.0) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("compute_lambda: epsilon outside (0, 1)") {
    CHECK_THROWS_AS(compute_lambda(8, 64, 0.0), DomainError);
    CHECK_THROWS_AS(compute_lambda(8, 64, 1.0), DomainError);
    CHECK_THROWS_AS(compute_lambda(8, 64, -0.2), DomainError);
}

TEST_CASE("resolve_lambda: override and noise scaling") {
    EstimatorConfig c;
    c.lambda_override = 0.7;
    CHECK(resolve_lambda(c, 8, 100) == 0.7);
    c.noise_std_scaling = 2.0;
    CHECK(resolve_lambda(c, 8, 100) == doctest::Approx(1.4));
    c.lambda_override.reset();
    CHECK(resolve_lambda(c, 8, 64) == doctest::Approx(2.0));
    c.noise_std_scaling = -1.0;
    CHECK_THROWS_AS(resolve_lambda(c, 8, 64), DomainError);
}

TEST_CASE("soft_threshold: piecewise values") {
    const Vector got = soft_threshold(demo_x_ls(), 0.5);
    Vector want(4);
    want << 1.5, 0.0, -0.5, -1.0;
    CHECK((got - want).cwiseAbs().maxCoeff() == 0.0);
    CHECK((soft_threshold(demo_x_ls(), 0.0) - demo_x_ls()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(soft_threshold(demo_x_ls(), 2.0).isZero(0.0));
    CHECK_THROWS_AS(soft_threshold(demo_x_ls(), -0.1), DomainError);
}

TEST_CASE("soft_threshold: tie |x| == lambda maps to zero") {
    Vector x(2);
    x << 0.75, -0.75;
    CHECK(soft_threshold(x, 0.75).isZero(0.0));
}

TEST_CASE("soft_threshold: minimizes the l1 norm over the feasible box (grid oracle)") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> lam(0.05, 2.0);
    for (int instance = 0; instance < 40; ++instance) {
        const int n = 1 + instance % 2;
        Vector x_ls(n);
        for (int i = 0; i < n; ++i) x_ls[i] = coord(gen);
        const double lambda = lam(gen);
        const Vector x_lp = soft_threshold(x_ls, lambda);
        // step = 2 lambda / 400 = lambda / 200
        const oracle::GridMinimum g = oracle::grid_l1_minimum(x_ls, lambda, 401);
        CHECK((x_lp - x_ls).cwiseAbs().maxCoeff() <= lambda + kLpBoundCushion);
        CHECK(x_lp.lpNorm<1>() <= g.l1 + 1e-12);
        CHECK(g.l1 - x_lp.lpNorm<1>() <= n * g.step);
    }
}

TEST_CASE("soft_threshold: nonexpansive") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> normal;
    for (int k = 0; k < 200; ++k) {
        Vector x(6), z(6);
        for (int i = 0; i < 6; ++i) {
            x[i] = 2.0 * normal(gen);
            z[i] = 2.0 * normal(gen);
        }
        const double lambda = std::abs(normal(gen));
        CHECK((soft_threshold(x, lambda) - soft_threshold(z, lambda)).norm() <=
              (x - z).norm() + 1e-15);
    }
}

TEST_CASE("detect_support: cushion and empties") {
    Vector x(4);
    x << 1.5, 0.0, -0.5, -1.0;
    CHECK(detect_support(x) == Support{0, 2, 3});
    CHECK(detect_support(Vector::Zero(5)).empty());
    Vector tiny(5);
    tiny << 0.0, 3.0, 0.0, 0.0, 2e-13;
    CHECK(detect_support(tiny) == Support{1});
}

TEST_CASE("estimate: noiseless data recovers truth exactly") {
    const Matrix a = oracle::random_gaussian(60, 6, 12);
    Vector x0 = Vector::Zero(6);
    x0[1] = 2.0;
    x0[4] = -1.5;
    EstimatorConfig c;
    c.lambda_override = 0.5;
    const PipelineTrace t = estimate(a, a * x0, c);
    CHECK(t.support_lp == Support{1, 4});
    CHECK((t.x_rels - x0).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK_FALSE(t.rank_warning);
    // Trace invariants
    CHECK((t.x_lp - soft_threshold(t.x_ls, t.lambda)).cwiseAbs().maxCoeff() == 0.0);
    for (Index i = 0; i < 6; ++i) {
        if (std::find(t.support_lp.begin(), t.support_lp.end(), i) == t.support_lp.end()) {
            CHECK(t.x_rels[i] == 0.0);
        }
    }
}

TEST_CASE("estimate: huge lambda empties the support") {
    const Problem p = gen_experiment1(50, 3);
    EstimatorConfig c;
    c.lambda_override = 1e6;
    const PipelineTrace t = estimate(p.a, p.y, c);
    CHECK(t.support_lp.empty());
    CHECK(t.x_rels.isZero(0.0));
}

TEST_CASE("estimate: uses the schedule by default") {
    const Problem p = gen_experiment1(64, 1);
    const PipelineTrace t = estimate(p.a, p.y, EstimatorConfig{});
    CHECK(t.lambda == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("estimate: errors") {
    const Problem p = gen_experiment1(30, 1);
    EstimatorConfig bad;
    bad.epsilon = 1.5;
    CHECK_THROWS_AS(estimate(p.a, p.y, bad), DomainError);
    CHECK_THROWS_AS(estimate(p.a, Vector::Ones(29), EstimatorConfig{}), DomainError);
    Matrix singular = p.a;
    singular.col(3) = singular.col(2);
    CHECK_THROWS_AS(estimate(singular, p.y, EstimatorConfig{}), RankDeficientError);
}

TEST_CASE("estimate: re-LSE equals oracle whenever the support is exact") {
    std::size_t exact = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Problem p = gen_experiment1(200, seed);
        const PipelineTrace t = estimate(p.a, p.y, EstimatorConfig{});
        if (t.support_lp != p.true_support) continue;
        ++exact;
        const SparseEstimate o = oracle_lse(p.a, p.y, p.true_support);
        CHECK((t.x_rels - o.x).cwiseAbs().maxCoeff() <= kOracleMatchTolerance);
    }
    CHECK(exact > 90);
}

TEST_CASE("oracle_lse: full support and noiseless data") {
    const Matrix a = oracle::random_gaussian(20, 3, 4);
    const Vector y = oracle::random_gaussian(20, 1, 5).col(0);
    const SparseEstimate o = oracle_lse(a, y, {0, 1, 2});
    CHECK(o.method == Method::OracleLse);
    CHECK((o.x - oracle::normal_equations(a, y)).cwiseAbs().maxCoeff() <= 1e-10);

    Vector x0(3);
    x0 << 0.0, 4.0, -2.0;
    const SparseEstimate exact = oracle_lse(a, a * x0, {1, 2});
    CHECK((exact.x - x0).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("oracle_lse: lower MSE than plain LSE on experiment 1") {
    double oracle_mse = 0.0, lse_mse = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Problem p = gen_experiment1(200, seed);
        oracle_mse += (oracle_lse(p.a, p.y, p.true_support).x - p.x_true).squaredNorm();
        lse_mse += (plain_lse(svd_thin(p.a), p.y).x - p.x_true).squaredNorm();
    }
    CHECK(oracle_mse < lse_mse);
}

TEST_CASE("solution_path: shrinks linearly and stays at zero") {
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
    const auto path = solution_path(demo_x_ls(), grid);
    REQUIRE(path.size() == 5);
    CHECK((path[0] - demo_x_ls()).cwiseAbs().maxCoeff() == 0.0);
    for (std::size_t k = 1; k < 5; ++k) CHECK(path[k][1] == 0.0);  // zero from lambda = 0.5 on
    CHECK(path[3][0] == doctest::Approx(0.5));
    CHECK(path[4][0] == 0.0);
    CHECK(path[4].isZero(0.0));
    for (std::size_t k = 1; k < 5; ++k) CHECK(path[k].lpNorm<1>() <= path[k - 1].lpNorm<1>());

    const std::vector<double> single{0.0};
    CHECK((solution_path(demo_x_ls(), single)[0] - demo_x_ls()).isZero(0.0));

    const std::vector<double> descending{1.0, 0.5};
    CHECK_THROWS_AS(solution_path(demo_x_ls(), descending), DomainError);
}

TEST_CASE("solution_path: each coordinate is piecewise linear in lambda") {
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(0.025 * k);
    const auto path = solution_path(demo_x_ls(), grid);
    for (Index i = 0; i < 4; ++i) {
        const double x = demo_x_ls()[i];
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK(path[k][i] == doctest::Approx(oracle::shrink_scalar(x, grid[k])).epsilon(1e-14));
        }
    }
}
