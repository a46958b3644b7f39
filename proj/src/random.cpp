#include "pnofdm/random.hpp"

#include <cmath>

namespace pnofdm {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32),
                      0x9e3779b9u};
    return std::mt19937_64(seq);
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream))
{
}

double RandomSource::gaussian(double mean, double stddev) { return mean + stddev * normal_(engine_); }

cplx RandomSource::complex_gaussian(double variance)
{
    const double s = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {s * re, s * im};
}

double RandomSource::uniform(double lo, double hi)
{
    std::uniform_real_distribution<double> d(lo, hi);
    return d(engine_);
}

std::uint64_t RandomSource::bits() { return engine_(); }

} // namespace pnofdm
