#include "lpsparse/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Cholesky>

#include "lpsparse/errors.hpp"

namespace lpsparse {

namespace {

constexpr double kResonanceTolerance = 1e-9;

/// Distance from theta to the nearest integer multiple of 2 pi.
double distance_to_lattice(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double r = std::remainder(theta, two_pi);
    return std::abs(r);
}

const CorrelatedGaussianDesign& experiment1_design() {
    static const CorrelatedGaussianDesign design(8, 0.5);
    return design;
}

}  // namespace

double Problem::x0_min() const {
    double m = 0.0;
    for (Index i : true_support) {
        const double v = std::abs(x_true[i]);
        m = (m == 0.0) ? v : std::min(m, v);
    }
    return m;
}

Problem make_problem(Matrix a, Vector x_true, double noise_var, Rng& rng, std::uint64_t seed) {
    if (x_true.size() != a.cols()) throw DomainError("make_problem: x_true length mismatch");
    if (!(noise_var > 0.0)) throw DomainError("make_problem: noise variance must be positive");
    Problem p;
    p.noise.resize(a.rows());
    const double scale = std::sqrt(noise_var);
    for (Index i = 0; i < a.rows(); ++i) p.noise[i] = scale * rng.normal();
    p.y = a * x_true + p.noise;
    p.true_support = support_of(x_true);
    p.a = std::move(a);
    p.x_true = std::move(x_true);
    p.noise_var = noise_var;
    p.seed = seed;
    return p;
}

CorrelatedGaussianDesign::CorrelatedGaussianDesign(Index n, double rho) {
    if (n < 1) throw DomainError("design: n must be positive");
    if (!(std::abs(rho) < 1.0)) throw DomainError("design: |rho| must be below 1");
    covariance_.resize(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
            covariance_(j, k) = std::pow(rho, static_cast<double>(std::abs(j - k)));
        }
    }
    const Eigen::LLT<Matrix> llt(covariance_);
    if (llt.info() != Eigen::Success) throw NumericalError("design: covariance not positive definite");
    factor_ = llt.matrixL();
}

Matrix CorrelatedGaussianDesign::sample(Index rows, Rng& rng) const {
    const Index n = cols();
    Matrix a(rows, n);
    Vector z(n);
    for (Index i = 0; i < rows; ++i) {
        for (Index k = 0; k < n; ++k) z[k] = rng.normal();
        a.row(i) = (factor_ * z).transpose();
    }
    return a;
}

SinusoidDict::SinusoidDict(std::vector<double> freqs, double sample_period, Index n_samples)
    : freqs_(std::move(freqs)), sample_period_(sample_period), n_samples_(n_samples) {
    if (freqs_.empty()) throw DomainError("sinusoid dictionary: no frequencies");
    if (!(sample_period_ > 0.0) || !std::isfinite(sample_period_)) {
        throw DomainError("sinusoid dictionary: sample period must be positive");
    }
    if (n_samples_ < 1) throw DomainError("sinusoid dictionary: need at least one sample");
    const std::size_t n = freqs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(freqs_[i])) throw DomainError("sinusoid dictionary: non-finite frequency");
        if (distance_to_lattice(2.0 * freqs_[i] * sample_period_) < kResonanceTolerance) {
            throw DomainError("sinusoid dictionary: 2 w_" + std::to_string(i + 1) +
                              " t_s is a multiple of 2 pi");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (freqs_[i] == freqs_[j]) throw DomainError("sinusoid dictionary: duplicate frequency");
            const double diff = (freqs_[i] - freqs_[j]) * sample_period_;
            const double sum = (freqs_[i] + freqs_[j]) * sample_period_;
            if (distance_to_lattice(diff) < kResonanceTolerance ||
                distance_to_lattice(sum) < kResonanceTolerance) {
                throw DomainError("sinusoid dictionary: frequencies " + std::to_string(i + 1) +
                                  " and " + std::to_string(j + 1) + " are resonant");
            }
        }
    }
}

SinusoidDict SinusoidDict::standard(Index n_samples) {
    std::vector<double> w(10);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = static_cast<double>(k + 1);
    return SinusoidDict(std::move(w), 0.1, n_samples);
}

Matrix build_sinusoid_matrix(const SinusoidDict& dict) {
    Matrix a(dict.n_samples(), dict.n_freqs());
    for (Index i = 0; i < a.rows(); ++i) {
        const double t = static_cast<double>(i + 1) * dict.sample_period();
        for (Index k = 0; k < a.cols(); ++k) {
            a(i, k) = std::sin(t * dict.freqs()[static_cast<std::size_t>(k)]);
        }
    }
    return a;
}

Problem gen_experiment1(Index n_obs, std::uint64_t seed) {
    if (n_obs <= 8) throw DomainError("experiment 1 needs N > 8");
    Rng rng(seed);
    Matrix a = experiment1_design().sample(n_obs, rng);
    Vector x(8);
    x << 3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0;
    return make_problem(std::move(a), std::move(x), 1.0, rng, seed);
}

Problem gen_experiment2(Index n_obs, std::uint64_t seed) {
    if (n_obs <= 10) throw DomainError("experiment 2 needs N > 10");
    Matrix a = build_sinusoid_matrix(SinusoidDict::standard(n_obs));
    Vector x = Vector::Zero(10);
    x.head(3).setOnes();
    Rng rng(seed);
    return make_problem(std::move(a), std::move(x), 1.0, rng, seed);
}

std::string_view to_string(Generator g) {
    return g == Generator::Experiment1 ? "exp1" : "exp2";
}

std::optional<Generator> parse_generator(std::string_view tag) {
    if (tag == "exp1") return Generator::Experiment1;
    if (tag == "exp2") return Generator::Experiment2;
    return std::nullopt;
}

Problem generate(Generator g, Index n_obs, std::uint64_t seed) {
    return g == Generator::Experiment1 ? gen_experiment1(n_obs, seed) : gen_experiment2(n_obs, seed);
}

Index min_observations(Generator g) { return g == Generator::Experiment1 ? 9 : 11; }

Index parameter_count(Generator g) { return g == Generator::Experiment1 ? 8 : 10; }

}  // namespace lpsparse
