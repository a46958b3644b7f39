#pragma once

#include "pnofdm/link.hpp"
#include "pnofdm/types.hpp"

#include <string>
#include <vector>

namespace pnofdm {

enum class SymbolKind
{
    pilot,    // T_p: PN and CH pilots
    tracking, // T_c: PN pilots only
};

enum class SubcarrierRole
{
    data,
    pn_pilot,
    zero_pilot,
    ch_pilot,
};

struct PilotLayout
{
    int n = 0;
    int gamma = 0;
    int n_p = 1;
    int n_cb = 1;
    int n_c = 1;
    int n_ct = 1;
    double amplitude = 1.0; // sqrt(E_s)

    std::vector<int> pn_pilot_subcarriers; // 0 .. 4 gamma
    std::vector<int> pn_obs_subcarriers;   // gamma .. 3 gamma
    std::vector<int> ch_pilot_subcarriers; // 2 gamma, then m * N_cb for m = 1 .. N_c - 1
    std::vector<SymbolKind> slot_plan;     // length N_ct

    int pn_center() const { return 2 * gamma; }
    cplx pn_pilot_value(int subcarrier) const;
    SubcarrierRole role(int subcarrier, SymbolKind kind) const;
    const std::vector<int>& data_subcarriers(SymbolKind kind) const;

    // Toeplitz matrix with entry (r, c) = X_{2 gamma + r - c} over the PN pilot block.
    ComplexMat assembled_pilot_matrix() const;
    // Pilot symbols per coherence time, PN pilots counted with their zero guards.
    int pilots_per_slot() const;

    std::vector<int> data_tp;
    std::vector<int> data_tc;
};

PilotLayout build_layout(const OfdmSpec& ofdm, const CoherenceSpec& coh, int gamma);

// (N_ct (2 N_p - 1) + N_c - 1) / (N N_ct)
double pilot_overhead(int n, int n_ct, int n_c, int n_p);

// {"n":..,"gamma":..,"symbols":[{"kind":"pilot","pn_pilot":[..],"zero_pilot":[..],"ch_pilot":[..],"data_count":..},..]}
std::string layout_resource_map_json(const PilotLayout& layout);

const char* to_string(SubcarrierRole role);
const char* to_string(SymbolKind kind);

} // namespace pnofdm
