#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lpsparse/rng.hpp"
#include "lpsparse/types.hpp"

namespace lpsparse {

/// y = A x_true + noise, noise ~ N(0, noise_var I).
struct Problem {
    Matrix a;
    Vector y;
    Vector x_true;
    Support true_support;
    Vector noise;
    double noise_var = 1.0;
    std::uint64_t seed = 0;

    Index n_obs() const { return a.rows(); }
    Index n_params() const { return a.cols(); }
    Index sparsity() const { return static_cast<Index>(true_support.size()); }
    /// Smallest nonzero |x_true_i|; 0 for an all-zero truth.
    double x0_min() const;
};

/// Assembles a Problem, drawing the noise from `rng`.
Problem make_problem(Matrix a, Vector x_true, double noise_var, Rng& rng, std::uint64_t seed);

/**
 * Rows drawn i.i.d. from N(0, C) with Toeplitz covariance C(j, k) = rho^|j-k|.
 * The Cholesky factor of C is computed once at construction.
 */
class CorrelatedGaussianDesign {
public:
    CorrelatedGaussianDesign(Index n, double rho);

    Index cols() const { return factor_.rows(); }
    const Matrix& covariance() const { return covariance_; }
    Matrix sample(Index rows, Rng& rng) const;

private:
    Matrix covariance_;
    Matrix factor_;  // lower triangular
};

/// Sampled sinusoid dictionary: entry (i, k) = sin(i * w_k * t_s), i = 1..N.
class SinusoidDict {
public:
    /// Rejects duplicate frequencies, t_s <= 0, and resonant pairs where
    /// (w_i +- w_j) t_s or 2 w_i t_s is a multiple of 2 pi.
    SinusoidDict(std::vector<double> freqs, double sample_period, Index n_samples);

    /// n = 10, w_k = k rad/s, t_s = 0.1 s.
    static SinusoidDict standard(Index n_samples);

    Index n_freqs() const { return static_cast<Index>(freqs_.size()); }
    const std::vector<double>& freqs() const { return freqs_; }
    double sample_period() const { return sample_period_; }
    Index n_samples() const { return n_samples_; }

private:
    std::vector<double> freqs_;
    double sample_period_;
    Index n_samples_;
};

Matrix build_sinusoid_matrix(const SinusoidDict& dict);

/// Correlated Gaussian design (rho = 0.5), n = 8, x = (3, 1.5, 0, 0, 2, 0, 0, 0).
Problem gen_experiment1(Index n_obs, std::uint64_t seed);

/// Standard sinusoid dictionary, x = (1, 1, 1, 0, ..., 0).
Problem gen_experiment2(Index n_obs, std::uint64_t seed);

enum class Generator { Experiment1, Experiment2 };

std::string_view to_string(Generator g);
std::optional<Generator> parse_generator(std::string_view tag);
Problem generate(Generator g, Index n_obs, std::uint64_t seed);

/// Smallest N accepted by the generator.
Index min_observations(Generator g);

/// Number of unknowns n of the generator's problems.
Index parameter_count(Generator g);

}  // namespace lpsparse
