#include "lpsparse/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

namespace lpsparse {

double Rng::uniform() {
    // (k + 0.5) / 2^53 for k in [0, 2^53)
    const std::uint64_t k = next_u64() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Largest multiple of bound representable, minus one.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t r = next_u64();
    while (r > limit) r = next_u64();
    return r % bound;
}

std::vector<std::size_t> Rng::permutation(std::size_t count) {
    std::vector<std::size_t> p(count);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = count; i > 1; --i) {
        const auto j = static_cast<std::size_t>(below(i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

}  // namespace lpsparse
