#pragma once

#include "pnofdm/estimators.hpp"
#include "pnofdm/phase_noise.hpp"

namespace pnofdm {

double nmse_pnac_closed(EstimatorKind kind, const PnStats& stats, double snr);
double nmse_pnac_floor(EstimatorKind kind, const PnStats& stats);

// (1 - P_dom + N_p / SNR) / P_dom and its two limits.
double nmse_pnac_approx(double p_dom, int n_p, double snr);
double nmse_pnac_approx_high_snr(double p_dom);
double nmse_pnac_approx_low_snr(double p_dom, int n_p, double snr);

double nmse_ifc_closed(EstimatorKind kind, double sigma_eps_sq, double snr);
double nmse_ifc_floor(EstimatorKind kind, double sigma_eps_sq);

// (1 - rho) * (N_c N_re N_ofdm / T_slot) * M_qam * (1 - BER), bits/s.
double throughput(double rho_oh, int n_c, int n_re, int n_ofdm, double t_slot_s, int m_qam, double ber);

// Exact bit error rate of Gray square QAM with unit-energy symbols at E_s/N_0 = snr,
// over AWGN and over flat Rayleigh fading with perfect zero-forcing.
double ber_qam_awgn(int order, double snr);
double ber_qam_rayleigh(int order, double mean_snr);

} // namespace pnofdm
