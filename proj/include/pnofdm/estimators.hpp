#pragma once

#include "pnofdm/link.hpp"
#include "pnofdm/phase_noise.hpp"
#include "pnofdm/pilots.hpp"
#include "pnofdm/simulation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pnofdm {

enum class EstimatorKind
{
    ls,
    lmmse,
};

const char* to_string(EstimatorKind kind);
EstimatorKind parse_estimator(const std::string& name);

struct PnacEstimate
{
    ComplexVec f_bar;    // N_p values in dominant-index order
    ComplexVec f_sparse; // length N, f_bar at the dominant indices
};

PnacEstimate make_pnac_estimate(ComplexVec f_bar, int n, int gamma);

// Linear PN-affected-channel estimator f = Q y_obs / sqrt(E_s); Q is built once.
class PnacEstimator
{
public:
    PnacEstimator(const PilotLayout& layout, EstimatorKind kind, const PnStats* stats, double snr);

    PnacEstimate operator()(const ComplexVec& y_f) const;
    const ComplexMat& filter() const { return q_; }

private:
    int n_;
    int gamma_;
    double inv_amplitude_;
    std::vector<int> obs_;
    ComplexMat q_;
};

PnacEstimate estimate_pnac(const ComplexVec& y_f,
                           const PilotLayout& layout,
                           EstimatorKind kind,
                           const PnStats& stats,
                           double snr);

// g_p = sqrt(N) idft(f_sparse), the time-domain distortion being divided out.
ComplexVec pn_time_response(const ComplexVec& f_sparse);

// y_If = dft(idft(y_f) / g_p)
ComplexVec suppress_ici(const ComplexVec& y_f, const PnacEstimate& pnac, std::optional<double> tol = std::nullopt);

struct IfcEstimate
{
    ComplexVec h_if; // one value per coherence block
};

IfcEstimate estimate_ifc(const ComplexVec& y_if,
                         const PilotLayout& layout,
                         EstimatorKind kind,
                         double sigma_eps_sq,
                         double snr);

// Zero-forcing on the data subcarriers of a symbol of the given kind, then minimum-distance demap.
std::vector<std::uint8_t> equalize_detect(const ComplexVec& y_if,
                                          const IfcEstimate& ifc,
                                          const PilotLayout& layout,
                                          const QamSpec& qam,
                                          SymbolKind kind);

// Distortion left after deconvolution, u_n = alpha p_t,n / g_n.
struct EffectiveError
{
    cplx common;            // mean_n u_n
    double power = 0.0;     // mean_n |u_n|^2, the alpha-normalized G
    double coherent = 1.0;  // |common|^2 / power
    double raw_sq = 0.0;    // ||f_sparse / alpha - p_f||^2
};

EffectiveError measure_effective_error(const ComplexVec& g_p, cplx alpha, const PnRealization& pn, const ComplexVec& f_sparse);

// Ideal ICI-free channel seen after deconvolution: (H_m / alpha) * common.
ComplexVec ifc_reference(const ChannelRealization& ch, cplx alpha, cplx common);

struct CalibrationResult
{
    double sigma_eps_sq = 0.0;
    double sigma_eps_sq_stderr = 0.0;
    double g_bar = 1.0;
    double g_bar_stderr = 0.0;
    double sigma_eps_sq_raw = 0.0;
    double sigma_eps_sq_raw_stderr = 0.0;
    int trials = 0;
    bool low_trial_warning = false;
};

inline constexpr int max_deconvolution_retries = 3;

// Simulator-side estimate of sigma_eps^2 and G over pilot symbols. Trial t
// draws from stream streams::calibration + t of `seed`.
CalibrationResult calibrate_effective_error(const LinkScenario& sc,
                                            const PnStats& stats,
                                            EstimatorKind pnac_kind,
                                            int n_trials,
                                            std::uint64_t seed,
                                            int threads = 1);

} // namespace pnofdm
