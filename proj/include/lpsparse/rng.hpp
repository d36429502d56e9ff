#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lpsparse {

/**
 * Reproducible random source.
 *
 * Bits come from std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Everything layered on top is implemented here rather than with
 * the <random> distributions, whose algorithms are implementation-defined:
 *   uniform()       53 high bits -> (0, 1), never 0 or 1
 *   normal()        Box-Muller, both variates of a pair used in order
 *   below(bound)    rejection sampling, no modulo bias
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    double normal();
    std::uint64_t below(std::uint64_t bound);

    /// Fisher-Yates permutation of 0..count-1.
    std::vector<std::size_t> permutation(std::size_t count);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace lpsparse
