#pragma once

#include "pnofdm/types.hpp"

#include <cstdint>
#include <random>

namespace pnofdm {

// Seeded sampling source. One owner per trial; (seed, stream) fixes the draws.
class RandomSource
{
public:
    RandomSource(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    double gaussian(double mean = 0.0, double stddev = 1.0);
    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_gaussian(double variance = 1.0);
    double uniform(double lo, double hi);
    std::uint64_t bits();

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

// Stream ids for the distinct consumers of one master seed.
namespace streams {
inline constexpr std::uint64_t evaluation = 0;
inline constexpr std::uint64_t calibration = 1ULL << 40;
inline constexpr std::uint64_t retry_stride = 1ULL << 48;
} // namespace streams

} // namespace pnofdm
