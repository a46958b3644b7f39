#include "pnofdm/simulation.hpp"

#include <cmath>
#include <numbers>

namespace pnofdm {

double LinkScenario::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

LinkScenario make_scenario(const OfdmSpec& ofdm, int n_cb, int n_ct, double beta_hz, int gamma, double snr_db)
{
    LinkScenario sc;
    sc.ofdm = ofdm;
    sc.coherence = CoherenceSpec::make(ofdm.n, n_cb, n_ct);
    sc.oscillator = {beta_hz, ofdm.sample_period()};
    sc.gamma = gamma;
    sc.snr_db = snr_db;
    return sc;
}

ComplexVec build_symbol(const PilotLayout& layout, const QamSpec& qam, SymbolKind kind, const std::vector<std::uint8_t>& bits)
{
    const auto& data = layout.data_subcarriers(kind);
    const int bps = qam.bits_per_symbol();
    if (bits.size() != data.size() * bps)
        throw std::invalid_argument("bit count does not match the data subcarriers");
    ComplexVec x(layout.n);
    for (std::size_t i = 0; i < data.size(); ++i)
        x[data[i]] = layout.amplitude * qam.map_one(bits.data() + i * bps);
    x[layout.pn_center()] = layout.amplitude;
    if (kind == SymbolKind::pilot)
        for (std::size_t m = 1; m < layout.ch_pilot_subcarriers.size(); ++m)
            x[layout.ch_pilot_subcarriers[m]] = layout.amplitude;
    return x;
}

SlotRealization simulate_slot(const LinkScenario& sc,
                              const PilotLayout& layout,
                              const QamSpec& qam,
                              RandomSource& rng,
                              int n_symbols)
{
    const int n = sc.ofdm.n;
    SlotRealization slot;
    slot.channel = draw_channel(sc.coherence, rng);
    slot.initial_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double phase = slot.initial_phase;

    const double noise_var = sc.noise_variance();
    const int bps = qam.bits_per_symbol();
    slot.symbols.resize(n_symbols);
    for (int s = 0; s < n_symbols; ++s) {
        TxSymbol& sym = slot.symbols[s];
        sym.kind = layout.slot_plan[s % layout.slot_plan.size()];
        if (sc.phase_noise) {
            sym.pn = generate_pn(sc.oscillator, n, phase, rng, sc.ofdm.n_cp);
            phase = sym.pn.next_phase;
        } else {
            sym.pn.phi.assign(n, 0.0);
            sym.pn.p_t.assign(n, cplx(1.0, 0.0));
            sym.pn.p_f.assign(n, cplx{});
            sym.pn.p_f[0] = 1.0;
        }
        const std::size_t n_bits = layout.data_subcarriers(sym.kind).size() * bps;
        sym.bits.resize(n_bits);
        for (std::size_t i = 0; i < n_bits; i += 64) {
            std::uint64_t word = rng.bits();
            for (std::size_t b = i; b < std::min(n_bits, i + 64); ++b, word >>= 1)
                sym.bits[b] = static_cast<std::uint8_t>(word & 1);
        }
        sym.x_f = build_symbol(layout, qam, sym.kind, sym.bits);
        sym.y_f = transmit_symbol(sym.x_f, slot.channel, sym.pn, noise_var, rng);
    }
    return slot;
}

} // namespace pnofdm
