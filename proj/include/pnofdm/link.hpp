#pragma once

#include "pnofdm/phase_noise.hpp"
#include "pnofdm/random.hpp"
#include "pnofdm/types.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace pnofdm {

struct OfdmSpec
{
    int n = 1024;
    int n_cp = 0;
    double delta_f_hz = 240e3;
    double symbol_power = 1.0; // E_s

    double sample_period() const { return 1.0 / (n * delta_f_hz); }
    double symbol_duration() const { return (n + n_cp) * sample_period(); }
    void validate() const;
};

struct CoherenceSpec
{
    int n_cb = 1;
    int n_ct = 1;
    int n_c = 1;

    static CoherenceSpec make(int n, int n_cb, int n_ct);
    int n() const { return n_c * n_cb; }
};

struct ChannelRealization
{
    int n_cb = 1;
    ComplexVec h_blocks; // one CN(0,1) coefficient per coherence block
    ComplexVec h_f;      // block-expanded, length N
};

ChannelRealization draw_channel(const CoherenceSpec& coh, RandomSource& rng);
ChannelRealization channel_from_blocks(const ComplexVec& h_blocks, int n_cb);

// Square Gray-labelled QAM with unit average energy; reflected binary code per axis,
// first half of each label on I, second half on Q.
class QamSpec
{
public:
    explicit QamSpec(int order = 16);

    int order() const { return order_; }
    int bits_per_symbol() const { return bits_; }
    const ComplexVec& points() const { return points_; }

    ComplexVec map(std::span<const std::uint8_t> bits) const;
    std::vector<std::uint8_t> demap(std::span<const cplx> symbols) const;
    cplx map_one(const std::uint8_t* bits) const;
    void demap_one(cplx s, std::uint8_t* bits) const;

private:
    int order_;
    int bits_;
    int levels_;
    int axis_bits_;
    double scale_;
    ComplexVec points_;
};

// y_f = p_f (*) (x_f o h_f) + z_f, computed in the time domain as p_t o IDFT(x_f o h_f).
ComplexVec transmit_symbol(const ComplexVec& x_f,
                           const ChannelRealization& ch,
                           const PnRealization& pn,
                           double noise_var,
                           RandomSource& rng);

// Noise-free frequency-domain form p_f (*) (x_f o h_f).
ComplexVec synthesize_frequency_domain(const ComplexVec& x_f, const ChannelRealization& ch, const PnRealization& pn);

// Distinct unknowns F_{i,k} touched by the observation subcarriers.
int count_effective_unknowns(int n, int n_cb, int gamma, const std::set<int>& obs);

} // namespace pnofdm
