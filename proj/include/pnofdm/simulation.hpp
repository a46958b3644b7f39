#pragma once

#include "pnofdm/link.hpp"
#include "pnofdm/phase_noise.hpp"
#include "pnofdm/pilots.hpp"
#include "pnofdm/random.hpp"

#include <cstdint>
#include <vector>

namespace pnofdm {

struct LinkScenario
{
    OfdmSpec ofdm;
    CoherenceSpec coherence;
    OscillatorSpec oscillator;
    int gamma = 0;
    double snr_db = 20.0;
    int qam_order = 16;
    bool phase_noise = true; // false: p_t == 1, no initial rotation

    double snr_linear() const;
    double noise_variance() const { return ofdm.symbol_power / snr_linear(); }
};

LinkScenario make_scenario(const OfdmSpec& ofdm, int n_cb, int n_ct, double beta_hz, int gamma, double snr_db);

struct TxSymbol
{
    SymbolKind kind = SymbolKind::pilot;
    ComplexVec x_f;
    std::vector<std::uint8_t> bits; // labels of the data subcarriers, in subcarrier order
    PnRealization pn;
    ComplexVec y_f;
};

struct SlotRealization
{
    ChannelRealization channel;
    double initial_phase = 0.0;
    std::vector<TxSymbol> symbols;

    cplx alpha() const { return channel.h_blocks.front(); }
};

// Transmitted grid for one symbol: data on the layout's data subcarriers, pilots elsewhere.
ComplexVec build_symbol(const PilotLayout& layout, const QamSpec& qam, SymbolKind kind, const std::vector<std::uint8_t>& bits);

// One coherence time: fresh channel, uniform initial phase, then `n_symbols`
// symbols following the slot plan with the phase carried across CP intervals.
// Draw order: channel, initial phase, then per symbol PN increments, data bits, noise.
SlotRealization simulate_slot(const LinkScenario& sc,
                              const PilotLayout& layout,
                              const QamSpec& qam,
                              RandomSource& rng,
                              int n_symbols);

} // namespace pnofdm
