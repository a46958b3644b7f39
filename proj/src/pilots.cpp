#include "pnofdm/pilots.hpp"

#include <json.hpp>

#include <cmath>

namespace pnofdm {

cplx PilotLayout::pn_pilot_value(int subcarrier) const
{
    return subcarrier == pn_center() ? cplx(amplitude, 0.0) : cplx{};
}

SubcarrierRole PilotLayout::role(int subcarrier, SymbolKind kind) const
{
    if (subcarrier < 0 || subcarrier >= n)
        throw std::out_of_range("subcarrier out of range");
    if (subcarrier == pn_center())
        return SubcarrierRole::pn_pilot;
    if (subcarrier <= 4 * gamma)
        return SubcarrierRole::zero_pilot;
    if (kind == SymbolKind::pilot && subcarrier % n_cb == 0)
        return SubcarrierRole::ch_pilot;
    return SubcarrierRole::data;
}

const std::vector<int>& PilotLayout::data_subcarriers(SymbolKind kind) const
{
    return kind == SymbolKind::pilot ? data_tp : data_tc;
}

ComplexMat PilotLayout::assembled_pilot_matrix() const
{
    ComplexMat x(n_p, n_p);
    for (int r = 0; r < n_p; ++r)
        for (int c = 0; c < n_p; ++c)
            x(r, c) = pn_pilot_value(2 * gamma + r - c);
    return x;
}

int PilotLayout::pilots_per_slot() const
{
    int count = 0;
    for (SymbolKind kind : slot_plan)
        for (int k = 0; k < n; ++k)
            if (role(k, kind) != SubcarrierRole::data)
                ++count;
    // The reused PN pilot at 2 gamma is shared with the CH pilots, not counted twice.
    return count;
}

PilotLayout build_layout(const OfdmSpec& ofdm, const CoherenceSpec& coh, int gamma)
{
    ofdm.validate();
    if (gamma < 0)
        throw std::invalid_argument("approximation order must be >= 0");
    if (coh.n() != ofdm.n)
        throw std::invalid_argument("coherence geometry does not match N");
    if (4 * gamma + 1 > coh.n_cb)
        throw LayoutInfeasible("PN pilot block of " + std::to_string(4 * gamma + 1) +
                               " subcarriers does not fit in a coherence block of " + std::to_string(coh.n_cb));

    PilotLayout l;
    l.n = ofdm.n;
    l.gamma = gamma;
    l.n_p = 2 * gamma + 1;
    l.n_cb = coh.n_cb;
    l.n_c = coh.n_c;
    l.n_ct = coh.n_ct;
    l.amplitude = std::sqrt(ofdm.symbol_power);

    for (int k = 0; k <= 4 * gamma; ++k)
        l.pn_pilot_subcarriers.push_back(k);
    for (int k = gamma; k <= 3 * gamma; ++k)
        l.pn_obs_subcarriers.push_back(k);
    l.ch_pilot_subcarriers.push_back(2 * gamma);
    for (int m = 1; m < coh.n_c; ++m)
        l.ch_pilot_subcarriers.push_back(m * coh.n_cb);

    l.slot_plan.assign(coh.n_ct, SymbolKind::tracking);
    l.slot_plan[0] = SymbolKind::pilot;

    for (int k = 0; k < l.n; ++k) {
        if (l.role(k, SymbolKind::pilot) == SubcarrierRole::data)
            l.data_tp.push_back(k);
        if (l.role(k, SymbolKind::tracking) == SubcarrierRole::data)
            l.data_tc.push_back(k);
    }
    return l;
}

double pilot_overhead(int n, int n_ct, int n_c, int n_p)
{
    if (n < 1 || n_ct < 1 || n_c < 1 || n_p < 1)
        throw std::invalid_argument("pilot_overhead: all sizes must be >= 1");
    return (static_cast<double>(n_ct) * (2 * n_p - 1) + (n_c - 1)) / (static_cast<double>(n) * n_ct);
}

const char* to_string(SubcarrierRole role)
{
    switch (role) {
    case SubcarrierRole::data:
        return "data";
    case SubcarrierRole::pn_pilot:
        return "pn_pilot";
    case SubcarrierRole::zero_pilot:
        return "zero_pilot";
    case SubcarrierRole::ch_pilot:
        return "ch_pilot";
    }
    return "unknown";
}

const char* to_string(SymbolKind kind) { return kind == SymbolKind::pilot ? "pilot" : "tracking"; }

std::string layout_resource_map_json(const PilotLayout& layout)
{
    nlohmann::ordered_json j;
    j["n"] = layout.n;
    j["gamma"] = layout.gamma;
    j["n_p"] = layout.n_p;
    j["n_cb"] = layout.n_cb;
    j["n_c"] = layout.n_c;
    j["observations"] = layout.pn_obs_subcarriers;
    auto symbols = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < layout.slot_plan.size(); ++s) {
        const SymbolKind kind = layout.slot_plan[s];
        nlohmann::ordered_json sym;
        sym["symbol"] = s;
        sym["kind"] = to_string(kind);
        std::vector<int> pn, zero, ch;
        for (int k = 0; k < layout.n; ++k) {
            switch (layout.role(k, kind)) {
            case SubcarrierRole::pn_pilot:
                pn.push_back(k);
                break;
            case SubcarrierRole::zero_pilot:
                zero.push_back(k);
                break;
            case SubcarrierRole::ch_pilot:
                ch.push_back(k);
                break;
            case SubcarrierRole::data:
                break;
            }
        }
        sym["pn_pilot"] = pn;
        sym["zero_pilot"] = zero;
        sym["ch_pilot"] = ch;
        sym["data_count"] = layout.data_subcarriers(kind).size();
        symbols.push_back(sym);
    }
    j["symbols"] = symbols;
    return j.dump(2);
}

} // namespace pnofdm
