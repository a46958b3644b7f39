#include "pnofdm/analysis.hpp"

#include "pnofdm/link.hpp"
#include "pnofdm/numerics.hpp"

#include <bit>
#include <cmath>
#include <utility>
#include <vector>

namespace pnofdm {

namespace {

void require_stats(const PnStats& stats)
{
    if (stats.r_pp_gamma.empty() || stats.r_ici_gamma.empty())
        throw std::invalid_argument("phase-noise statistics are not populated");
}

double inverse_snr(double snr)
{
    if (!(snr > 0.0))
        throw std::invalid_argument("SNR must be > 0");
    return std::isinf(snr) ? 0.0 : 1.0 / snr;
}

void require_sigma(double sigma_eps_sq)
{
    if (!(sigma_eps_sq >= 0.0 && sigma_eps_sq < 1.0))
        throw std::invalid_argument("effective-error variance must lie in [0, 1)");
}

constexpr double floor_snr = 1e12;

} // namespace

double nmse_pnac_closed(EstimatorKind kind, const PnStats& stats, double snr)
{
    require_stats(stats);
    const double inv_snr = inverse_snr(snr);
    const double tr_pp = stats.r_pp_gamma.trace().real();
    const std::size_t np = stats.r_pp_gamma.rows();
    if (kind == EstimatorKind::ls)
        return (stats.r_ici_gamma.trace().real() + np * inv_snr) / tr_pp;

    ComplexMat core = stats.r_pp_gamma + stats.r_ici_gamma;
    for (std::size_t i = 0; i < np; ++i)
        core(i, i) += inv_snr;
    const ComplexMat x = hermitian_solve(core, stats.r_pp_gamma);
    const double explained = (stats.r_pp_gamma * x).trace().real();
    return 1.0 - explained / tr_pp;
}

double nmse_pnac_floor(EstimatorKind kind, const PnStats& stats)
{
    require_stats(stats);
    if (kind == EstimatorKind::ls)
        return stats.r_ici_gamma.trace().real() / stats.r_pp_gamma.trace().real();
    // R_pp^gamma + R_ici^gamma can be singular (beta = 0), so take the limit numerically.
    return nmse_pnac_closed(kind, stats, floor_snr);
}

double nmse_pnac_approx(double p_dom, int n_p, double snr)
{
    if (!(p_dom > 0.0 && p_dom <= 1.0))
        throw std::invalid_argument("dominant power must lie in (0, 1]");
    return (1.0 - p_dom + n_p * inverse_snr(snr)) / p_dom;
}

double nmse_pnac_approx_high_snr(double p_dom) { return nmse_pnac_approx(p_dom, 1, INFINITY); }

double nmse_pnac_approx_low_snr(double p_dom, int n_p, double snr)
{
    if (!(p_dom > 0.0 && p_dom <= 1.0))
        throw std::invalid_argument("dominant power must lie in (0, 1]");
    return n_p / p_dom * inverse_snr(snr);
}

double nmse_ifc_closed(EstimatorKind kind, double sigma_eps_sq, double snr)
{
    require_sigma(sigma_eps_sq);
    const double inv_snr = inverse_snr(snr);
    if (kind == EstimatorKind::ls)
        return (inv_snr + sigma_eps_sq) / (1.0 - sigma_eps_sq);
    if (std::isinf(snr))
        return sigma_eps_sq;
    return (1.0 + sigma_eps_sq * snr) / (1.0 + snr);
}

double nmse_ifc_floor(EstimatorKind kind, double sigma_eps_sq)
{
    require_sigma(sigma_eps_sq);
    return kind == EstimatorKind::ls ? sigma_eps_sq / (1.0 - sigma_eps_sq) : sigma_eps_sq;
}

double throughput(double rho_oh, int n_c, int n_re, int n_ofdm, double t_slot_s, int m_qam, double ber)
{
    if (!(rho_oh >= 0.0 && rho_oh < 1.0))
        throw std::invalid_argument("overhead must lie in [0, 1)");
    if (!(ber >= 0.0 && ber <= 1.0))
        throw std::invalid_argument("BER must lie in [0, 1]");
    if (!(t_slot_s > 0.0))
        throw std::invalid_argument("slot duration must be > 0");
    return (1.0 - rho_oh) * (static_cast<double>(n_c) * n_re * n_ofdm / t_slot_s) * m_qam * (1.0 - ber);
}

namespace {

// Per-axis Gray PAM bit error rate as a weighted sum of Q(k d sqrt(2 snr)) terms:
// returns (k, weight) pairs so that BER = sum weight * Q(k * d * sqrt(2 snr)).
std::vector<std::pair<int, double>> pam_ber_terms(int order)
{
    const QamSpec qam(order); // validates the order
    const int axis_bits = qam.bits_per_symbol() / 2;
    const int levels = 1 << axis_bits;
    std::vector<double> weight(2 * levels + 1, 0.0);
    // P(decide j | sent i) = Q((2(j-i)-1) d / s) - Q((2(j-i)+1) d / s) with open edges.
    for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j) {
            if (i == j)
                continue;
            const int errors = std::popcount(static_cast<unsigned>((i ^ (i >> 1)) ^ (j ^ (j >> 1))));
            const double w = static_cast<double>(errors) / (levels * axis_bits);
            const int off = std::abs(j - i);
            weight[2 * off - 1] += w;
            if (j != 0 && j != levels - 1)
                weight[2 * off + 1] -= w;
        }
    std::vector<std::pair<int, double>> terms;
    for (int k = 1; k < static_cast<int>(weight.size()); ++k)
        if (weight[k] != 0.0)
            terms.emplace_back(k, weight[k]);
    return terms;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

} // namespace

double ber_qam_awgn(int order, double snr)
{
    const double d2 = 3.0 / (2.0 * (order - 1));
    double ber = 0.0;
    for (auto [k, w] : pam_ber_terms(order))
        ber += w * q_function(k * std::sqrt(2.0 * d2 * snr));
    return ber;
}

double ber_qam_rayleigh(int order, double mean_snr)
{
    const double d2 = 3.0 / (2.0 * (order - 1));
    double ber = 0.0;
    for (auto [k, w] : pam_ber_terms(order)) {
        // E[Q(sqrt(2 x))] over exponential x with mean xbar.
        const double xbar = k * k * d2 * mean_snr;
        ber += w * 0.5 * (1.0 - std::sqrt(xbar / (1.0 + xbar)));
    }
    return ber;
}

} // namespace pnofdm
