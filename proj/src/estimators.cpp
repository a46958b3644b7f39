#include "pnofdm/estimators.hpp"

#include "pnofdm/numerics.hpp"
#include "pnofdm/parallel.hpp"
#include "pnofdm/random.hpp"

#include <cmath>

namespace pnofdm {

const char* to_string(EstimatorKind kind) { return kind == EstimatorKind::ls ? "ls" : "lmmse"; }

EstimatorKind parse_estimator(const std::string& name)
{
    if (name == "ls")
        return EstimatorKind::ls;
    if (name == "lmmse")
        return EstimatorKind::lmmse;
    throw std::invalid_argument("unknown estimator '" + name + "'");
}

PnacEstimate make_pnac_estimate(ComplexVec f_bar, int n, int gamma)
{
    if (static_cast<int>(f_bar.size()) != 2 * gamma + 1)
        throw std::invalid_argument("PN-affected-channel vector has the wrong length");
    PnacEstimate est;
    est.f_sparse.assign(n, cplx{});
    const auto idx = dominant_indices(n, gamma);
    for (std::size_t r = 0; r < idx.size(); ++r)
        est.f_sparse[idx[r]] = f_bar[r];
    est.f_bar = std::move(f_bar);
    return est;
}

PnacEstimator::PnacEstimator(const PilotLayout& layout, EstimatorKind kind, const PnStats* stats, double snr)
    : n_(layout.n), gamma_(layout.gamma), inv_amplitude_(1.0 / layout.amplitude), obs_(layout.pn_obs_subcarriers)
{
    const std::size_t np = layout.n_p;
    if (kind == EstimatorKind::ls) {
        q_ = ComplexMat::identity(np);
        return;
    }
    if (!stats || stats->gamma != layout.gamma || stats->r_pp_gamma.rows() != np)
        throw std::invalid_argument("LMMSE estimation needs statistics for the layout's approximation order");
    if (!(snr > 0.0))
        throw std::invalid_argument("SNR must be > 0");
    ComplexMat core = stats->r_pp_gamma + stats->r_ici_gamma;
    const double inv_snr = std::isinf(snr) ? 0.0 : 1.0 / snr;
    for (std::size_t i = 0; i < np; ++i)
        core(i, i) += inv_snr;
    // Q = R_pp (core)^-1, and Q^H = core^-1 R_pp since both are Hermitian.
    q_ = hermitian_solve(core, stats->r_pp_gamma).adjoint();
}

PnacEstimate PnacEstimator::operator()(const ComplexVec& y_f) const
{
    if (static_cast<int>(y_f.size()) != n_)
        throw std::invalid_argument("received symbol has the wrong length");
    ComplexVec obs(obs_.size());
    for (std::size_t r = 0; r < obs_.size(); ++r)
        obs[r] = y_f[obs_[r]] * inv_amplitude_;
    return make_pnac_estimate(q_ * obs, n_, gamma_);
}

PnacEstimate estimate_pnac(const ComplexVec& y_f,
                           const PilotLayout& layout,
                           EstimatorKind kind,
                           const PnStats& stats,
                           double snr)
{
    return PnacEstimator(layout, kind, &stats, snr)(y_f);
}

ComplexVec pn_time_response(const ComplexVec& f_sparse)
{
    ComplexVec g = idft_unitary(f_sparse);
    const double root_n = std::sqrt(static_cast<double>(f_sparse.size()));
    for (auto& v : g)
        v *= root_n;
    return g;
}

ComplexVec suppress_ici(const ComplexVec& y_f, const PnacEstimate& pnac, std::optional<double> tol)
{
    return circ_deconvolve(y_f, pnac.f_sparse, tol);
}

IfcEstimate estimate_ifc(const ComplexVec& y_if,
                         const PilotLayout& layout,
                         EstimatorKind kind,
                         double sigma_eps_sq,
                         double snr)
{
    if (static_cast<int>(y_if.size()) != layout.n)
        throw std::invalid_argument("ICI-suppressed symbol has the wrong length");
    const double inv_amp = 1.0 / layout.amplitude;
    double shrink = 1.0;
    if (kind == EstimatorKind::lmmse) {
        if (!(sigma_eps_sq >= 0.0 && sigma_eps_sq < 1.0))
            throw std::invalid_argument("effective-error variance must lie in [0, 1)");
        const double inv_snr = std::isinf(snr) ? 0.0 : 1.0 / snr;
        shrink = (1.0 - sigma_eps_sq) / (1.0 + inv_snr);
    }
    // Unit-modulus real pilots: X^-1 y and X^H y / E_s coincide.
    IfcEstimate est;
    est.h_if.resize(layout.ch_pilot_subcarriers.size());
    for (std::size_t m = 0; m < est.h_if.size(); ++m)
        est.h_if[m] = shrink * y_if[layout.ch_pilot_subcarriers[m]] * inv_amp;
    return est;
}

std::vector<std::uint8_t> equalize_detect(const ComplexVec& y_if,
                                          const IfcEstimate& ifc,
                                          const PilotLayout& layout,
                                          const QamSpec& qam,
                                          SymbolKind kind)
{
    if (static_cast<int>(ifc.h_if.size()) != layout.n_c)
        throw std::invalid_argument("channel estimate does not match the number of coherence blocks");
    const auto& data = layout.data_subcarriers(kind);
    const int bps = qam.bits_per_symbol();
    const double inv_amp = 1.0 / layout.amplitude;
    std::vector<std::uint8_t> bits(data.size() * bps);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int k = data[i];
        const cplx x = y_if[k] / ifc.h_if[k / layout.n_cb] * inv_amp;
        qam.demap_one(x, bits.data() + i * bps);
    }
    return bits;
}

EffectiveError measure_effective_error(const ComplexVec& g_p, cplx alpha, const PnRealization& pn, const ComplexVec& f_sparse)
{
    const std::size_t n = g_p.size();
    EffectiveError e;
    cplx sum = 0.0;
    double power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx u = alpha * pn.p_t[i] / g_p[i];
        sum += u;
        power += std::norm(u);
    }
    e.common = sum / static_cast<double>(n);
    e.power = power / static_cast<double>(n);
    e.coherent = std::norm(e.common) / e.power;
    double raw = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        raw += std::norm(f_sparse[i] / alpha - pn.p_f[i]);
    e.raw_sq = raw;
    return e;
}

ComplexVec ifc_reference(const ChannelRealization& ch, cplx alpha, cplx common)
{
    ComplexVec h(ch.h_blocks.size());
    for (std::size_t m = 0; m < h.size(); ++m)
        h[m] = ch.h_blocks[m] / alpha * common;
    return h;
}

namespace {

struct MeanAccumulator
{
    double sum = 0.0;
    double sum_sq = 0.0;
    int count = 0;

    void add(double v)
    {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    double mean() const { return count ? sum / count : 0.0; }
    double stderr_of_mean() const
    {
        if (count < 2)
            return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sum_sq - count * m * m) / (count - 1));
        return std::sqrt(var / count);
    }
};

bool deconvolvable(const ComplexVec& g)
{
    double peak = 0.0;
    for (const auto& v : g)
        peak = std::max(peak, std::abs(v));
    for (const auto& v : g)
        if (!(std::abs(v) > 1e-9 * peak))
            return false;
    return true;
}

} // namespace

CalibrationResult calibrate_effective_error(const LinkScenario& sc,
                                            const PnStats& stats,
                                            EstimatorKind pnac_kind,
                                            int n_trials,
                                            std::uint64_t seed,
                                            int threads)
{
    if (n_trials < 1)
        throw std::invalid_argument("calibration needs at least one trial");
    const PilotLayout layout = build_layout(sc.ofdm, sc.coherence, sc.gamma);
    const QamSpec qam(sc.qam_order);
    const PnacEstimator estimator(layout, pnac_kind, &stats, sc.snr_linear());

    std::vector<EffectiveError> samples(n_trials);
    parallel_for(n_trials, threads, [&](std::size_t t) {
        for (int attempt = 0; attempt <= max_deconvolution_retries; ++attempt) {
            RandomSource rng(seed, streams::calibration + t + attempt * streams::retry_stride);
            const SlotRealization slot = simulate_slot(sc, layout, qam, rng, 1);
            const TxSymbol& sym = slot.symbols.front();
            const PnacEstimate est = estimator(sym.y_f);
            const ComplexVec g = pn_time_response(est.f_sparse);
            if (!deconvolvable(g))
                continue;
            samples[t] = measure_effective_error(g, slot.alpha(), sym.pn, est.f_sparse);
            return;
        }
        throw NumericalFailure("calibration: singular deconvolution persisted beyond the retry budget");
    });

    MeanAccumulator coherent, power, raw;
    for (const auto& s : samples) {
        coherent.add(s.coherent);
        power.add(s.power);
        raw.add(s.raw_sq);
    }
    CalibrationResult r;
    r.trials = n_trials;
    r.sigma_eps_sq = std::max(0.0, 1.0 - coherent.mean());
    r.sigma_eps_sq_stderr = coherent.stderr_of_mean();
    r.g_bar = power.mean();
    r.g_bar_stderr = power.stderr_of_mean();
    r.sigma_eps_sq_raw = raw.mean();
    r.sigma_eps_sq_raw_stderr = raw.stderr_of_mean();
    r.low_trial_warning = n_trials < 100;
    return r;
}

} // namespace pnofdm
