#include "pnofdm/link.hpp"

#include "pnofdm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pnofdm {

void OfdmSpec::validate() const
{
    if (n < 8)
        throw std::invalid_argument("OFDM size must be >= 8");
    if (n_cp < 0)
        throw std::invalid_argument("cyclic prefix length must be >= 0");
    if (!(delta_f_hz > 0.0) || !std::isfinite(delta_f_hz))
        throw std::invalid_argument("subcarrier spacing must be > 0");
    if (!(symbol_power > 0.0))
        throw std::invalid_argument("symbol power must be > 0");
}

CoherenceSpec CoherenceSpec::make(int n, int n_cb, int n_ct)
{
    if (n_cb < 1 || n_ct < 1)
        throw std::invalid_argument("coherence sizes must be >= 1");
    if (n % n_cb != 0)
        throw std::invalid_argument("N must be divisible by the coherence bandwidth N_cb");
    return {n_cb, n_ct, n / n_cb};
}

ChannelRealization channel_from_blocks(const ComplexVec& h_blocks, int n_cb)
{
    ChannelRealization ch;
    ch.n_cb = n_cb;
    ch.h_blocks = h_blocks;
    ch.h_f.resize(h_blocks.size() * n_cb);
    for (std::size_t l = 0; l < ch.h_f.size(); ++l)
        ch.h_f[l] = h_blocks[l / n_cb];
    return ch;
}

ChannelRealization draw_channel(const CoherenceSpec& coh, RandomSource& rng)
{
    ComplexVec blocks(coh.n_c);
    for (auto& h : blocks)
        h = rng.complex_gaussian(1.0);
    return channel_from_blocks(blocks, coh.n_cb);
}

// QAM

QamSpec::QamSpec(int order) : order_(order)
{
    bits_ = 0;
    while ((1 << bits_) < order)
        ++bits_;
    if (order < 4 || (1 << bits_) != order || bits_ % 2 != 0)
        throw std::invalid_argument("QAM order must be a square power of two (4, 16, 64, ...)");
    axis_bits_ = bits_ / 2;
    levels_ = 1 << axis_bits_;
    scale_ = std::sqrt(3.0 / (2.0 * (order - 1)));

    points_.resize(order);
    std::vector<std::uint8_t> label(bits_);
    for (int v = 0; v < order; ++v) {
        for (int b = 0; b < bits_; ++b)
            label[b] = (v >> (bits_ - 1 - b)) & 1;
        points_[v] = map_one(label.data());
    }
}

cplx QamSpec::map_one(const std::uint8_t* bits) const
{
    auto axis = [&](const std::uint8_t* b) {
        int g = 0;
        for (int i = 0; i < axis_bits_; ++i)
            g = (g << 1) | (b[i] & 1);
        int idx = 0;
        for (; g; g >>= 1)
            idx ^= g;
        return (2.0 * idx - (levels_ - 1)) * scale_;
    };
    return {axis(bits), axis(bits + axis_bits_)};
}

void QamSpec::demap_one(cplx s, std::uint8_t* bits) const
{
    auto axis = [&](double a, std::uint8_t* b) {
        const double pos = (a / scale_ + (levels_ - 1)) / 2.0;
        int idx = static_cast<int>(std::lround(pos));
        if (!std::isfinite(pos))
            idx = 0;
        idx = std::clamp(idx, 0, levels_ - 1);
        const int g = idx ^ (idx >> 1);
        for (int i = 0; i < axis_bits_; ++i)
            b[i] = (g >> (axis_bits_ - 1 - i)) & 1;
    };
    axis(s.real(), bits);
    axis(s.imag(), bits + axis_bits_);
}

ComplexVec QamSpec::map(std::span<const std::uint8_t> bits) const
{
    if (bits.size() % bits_ != 0)
        throw std::invalid_argument("bit count not divisible by bits per symbol");
    ComplexVec out(bits.size() / bits_);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = map_one(bits.data() + i * bits_);
    return out;
}

std::vector<std::uint8_t> QamSpec::demap(std::span<const cplx> symbols) const
{
    std::vector<std::uint8_t> out(symbols.size() * bits_);
    for (std::size_t i = 0; i < symbols.size(); ++i)
        demap_one(symbols[i], out.data() + i * bits_);
    return out;
}

// Signal synthesis

namespace {

void check_lengths(const ComplexVec& x_f, const ChannelRealization& ch, const PnRealization& pn)
{
    if (x_f.empty() || ch.h_f.size() != x_f.size() || pn.p_t.size() != x_f.size())
        throw std::invalid_argument("inconsistent symbol, channel and phase-noise lengths");
}

} // namespace

ComplexVec transmit_symbol(const ComplexVec& x_f,
                           const ChannelRealization& ch,
                           const PnRealization& pn,
                           double noise_var,
                           RandomSource& rng)
{
    check_lengths(x_f, ch, pn);
    ComplexVec s(x_f.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        s[k] = x_f[k] * ch.h_f[k];
    ComplexVec y_t = idft_unitary(s);
    for (std::size_t n = 0; n < y_t.size(); ++n)
        y_t[n] *= pn.p_t[n];
    if (noise_var > 0.0)
        for (auto& v : y_t)
            v += rng.complex_gaussian(noise_var);
    return dft_unitary(y_t);
}

ComplexVec synthesize_frequency_domain(const ComplexVec& x_f, const ChannelRealization& ch, const PnRealization& pn)
{
    check_lengths(x_f, ch, pn);
    ComplexVec s(x_f.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        s[k] = x_f[k] * ch.h_f[k];
    return circ_convolve(pn.p_f, s);
}

int count_effective_unknowns(int n, int n_cb, int gamma, const std::set<int>& obs)
{
    if (n < 1 || n_cb < 1 || gamma < 0)
        throw std::invalid_argument("count_effective_unknowns: bad sizes");
    std::set<std::pair<int, int>> unknowns;
    for (int i : dominant_indices(n, gamma))
        for (int m : obs) {
            if (m < 0 || m >= n)
                throw std::invalid_argument("observation index out of range");
            const int l = ((m - i) % n + n) % n;
            unknowns.emplace(i, l / n_cb);
        }
    return static_cast<int>(unknowns.size());
}

} // namespace pnofdm
