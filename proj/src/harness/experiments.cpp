#include "pnofdm/harness/experiments.hpp"

#include "pnofdm/analysis.hpp"
#include "pnofdm/parallel.hpp"
#include "pnofdm/pilots.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <tuple>

namespace pnofdm::harness {

namespace {

// Ratio of sums over trials with a delta-method standard error.
struct RatioEstimate
{
    double value = 0.0;
    double stderr_value = 0.0;
};

RatioEstimate ratio_of_means(const std::vector<double>& num, const std::vector<double>& den)
{
    const std::size_t t = num.size();
    double sn = 0.0, sd = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        sn += num[i];
        sd += den[i];
    }
    RatioEstimate r;
    if (sd <= 0.0)
        return {std::nan(""), std::nan("")};
    r.value = sn / sd;
    if (t < 2)
        return r;
    double ss = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        const double d = num[i] - r.value * den[i];
        ss += d * d;
    }
    const double mean_den = sd / t;
    r.stderr_value = std::sqrt(ss / (static_cast<double>(t) * (t - 1))) / mean_den;
    return r;
}

ExperimentRecord base_record(const ScenarioConfig& cfg, const char* experiment)
{
    ExperimentRecord r;
    r.experiment = experiment;
    r.n = cfg.ofdm.n;
    r.n_cb = cfg.n_cb;
    r.n_ct = cfg.n_ct;
    r.seed = cfg.seed;
    return r;
}

ExperimentRecord infeasible_record(const ScenarioConfig& cfg, const char* experiment, double beta, int gamma)
{
    ExperimentRecord r = base_record(cfg, experiment);
    r.beta_hz = beta;
    r.gamma = gamma;
    r.metric = "error_layout_infeasible";
    return r;
}

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

// Runs body(rng) for trial t, redrawing on a derived stream when it reports a
// singular deconvolution by returning false.
template <typename Body>
void run_trial(std::uint64_t seed, std::size_t t, Body&& body)
{
    for (int attempt = 0; attempt <= max_deconvolution_retries; ++attempt) {
        RandomSource rng(seed, streams::evaluation + t + attempt * streams::retry_stride);
        if (body(rng))
            return;
    }
    throw NumericalFailure("singular deconvolution persisted beyond the retry budget");
}

void log_point(const RunOptions& opts, const char* what, double beta, int gamma, double snr)
{
    if (opts.verbose)
        std::clog << fmt::format("[{}] beta={} gamma={} snr={} dB\n", what, beta, gamma, snr);
}

CalibrationResult calibrated(const ScenarioConfig& cfg,
                             const RunOptions& opts,
                             CalibrationCache& cache,
                             const LinkScenario& sc,
                             const PnStats& stats)
{
    const std::string key = calibration_key(sc, cfg.calibration_estimator, cfg.calibration_trials, cfg.seed);
    if (auto hit = cache.find(key))
        return *hit;
    CalibrationResult r =
        calibrate_effective_error(sc, stats, cfg.calibration_estimator, cfg.calibration_trials, cfg.seed, opts.threads);
    cache.store(key, r);
    return r;
}

CalibrationCache open_cache(const RunOptions& opts)
{
    return opts.cache_path.empty() ? CalibrationCache() : CalibrationCache(opts.cache_path);
}

std::vector<cplx> truth_pnac(const TxSymbol& sym, cplx alpha, const std::vector<int>& idx)
{
    std::vector<cplx> f(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        f[r] = alpha * sym.pn.p_f[idx[r]];
    return f;
}

} // namespace

// Calibration cache

CalibrationCache::CalibrationCache(std::string path) : path_(std::move(path))
{
    std::ifstream in(path_);
    if (!in)
        return;
    nlohmann::json j;
    try {
        in >> j;
        for (const auto& item : j.items()) {
            const auto& v = item.value();
            CalibrationResult r;
            r.sigma_eps_sq = v.at("sigma_eps_sq").get<double>();
            r.sigma_eps_sq_stderr = v.at("sigma_eps_sq_stderr").get<double>();
            r.g_bar = v.at("g_bar").get<double>();
            r.g_bar_stderr = v.at("g_bar_stderr").get<double>();
            r.sigma_eps_sq_raw = v.at("sigma_eps_sq_raw").get<double>();
            r.sigma_eps_sq_raw_stderr = v.at("sigma_eps_sq_raw_stderr").get<double>();
            r.trials = v.at("trials").get<int>();
            r.low_trial_warning = v.at("low_trial_warning").get<bool>();
            entries_[item.key()] = r;
        }
    } catch (const nlohmann::json::exception&) {
        // An unreadable cache is ignored and rebuilt.
        entries_.clear();
    }
}

std::optional<CalibrationResult> CalibrationCache::find(const std::string& key) const
{
    auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void CalibrationCache::store(const std::string& key, const CalibrationResult& r) { entries_[key] = r; }

void CalibrationCache::save() const
{
    if (path_.empty())
        return;
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, r] : entries_)
        j[key] = {{"sigma_eps_sq", r.sigma_eps_sq},
                  {"sigma_eps_sq_stderr", r.sigma_eps_sq_stderr},
                  {"g_bar", r.g_bar},
                  {"g_bar_stderr", r.g_bar_stderr},
                  {"sigma_eps_sq_raw", r.sigma_eps_sq_raw},
                  {"sigma_eps_sq_raw_stderr", r.sigma_eps_sq_raw_stderr},
                  {"trials", r.trials},
                  {"low_trial_warning", r.low_trial_warning}};
    std::ofstream out(path_);
    if (!out)
        throw std::runtime_error("cannot write calibration cache '" + path_ + "'");
    out << j.dump(1) << '\n';
}

std::string calibration_key(const LinkScenario& sc, EstimatorKind kind, int trials, std::uint64_t seed)
{
    return fmt::format("n={};n_cp={};delta_f={};es={};n_cb={};beta={};gamma={};snr_db={};qam={};est={};trials={};seed={}",
                       sc.ofdm.n, sc.ofdm.n_cp, sc.ofdm.delta_f_hz, sc.ofdm.symbol_power, sc.coherence.n_cb,
                       sc.oscillator.beta_hz, sc.gamma, sc.snr_db, sc.qam_order, to_string(kind), trials, seed);
}

// PN-affected-channel NMSE

std::vector<ExperimentRecord> run_nmse_pnac(const ScenarioConfig& cfg, const RunOptions& opts)
{
    std::vector<ExperimentRecord> out;
    const QamSpec qam(cfg.modulation);
    for (double beta : cfg.betas)
        for (int gamma : cfg.gammas) {
            LinkScenario base = make_scenario(cfg.ofdm, cfg.n_cb, cfg.n_ct, beta, gamma, 0.0);
            base.qam_order = cfg.modulation;
            PilotLayout layout;
            try {
                layout = build_layout(base.ofdm, base.coherence, gamma);
            } catch (const LayoutInfeasible&) {
                out.push_back(infeasible_record(cfg, "nmse_pnac", beta, gamma));
                continue;
            }
            const PnStats stats = make_pn_stats(base.oscillator, cfg.ofdm.n, gamma);
            const auto idx = dominant_indices(cfg.ofdm.n, gamma);

            ExperimentRecord pdom = base_record(cfg, "nmse_pnac");
            pdom.beta_hz = beta;
            pdom.gamma = gamma;
            pdom.metric = "p_dom";
            pdom.closed_form = stats.p_dom;
            out.push_back(pdom);
            for (EstimatorKind kind : cfg.estimators) {
                ExperimentRecord fl = base_record(cfg, "nmse_pnac");
                fl.beta_hz = beta;
                fl.gamma = gamma;
                fl.estimator = to_string(kind);
                fl.snr_db = INFINITY;
                fl.metric = "nmse_pnac_floor";
                fl.closed_form = nmse_pnac_floor(kind, stats);
                if (kind == EstimatorKind::ls)
                    fl.approx = nmse_pnac_approx_high_snr(stats.p_dom);
                out.push_back(fl);
            }

            for (double snr_db : cfg.snr_db) {
                log_point(opts, "nmse-pnac", beta, gamma, snr_db);
                LinkScenario sc = base;
                sc.snr_db = snr_db;
                const double snr = sc.snr_linear();
                std::vector<PnacEstimator> est;
                for (EstimatorKind kind : cfg.estimators)
                    est.emplace_back(layout, kind, &stats, snr);

                const std::size_t n_est = est.size();
                std::vector<std::vector<double>> err(n_est, std::vector<double>(cfg.trials));
                std::vector<double> ref(cfg.trials);
                parallel_for(cfg.trials, opts.threads, [&](std::size_t t) {
                    RandomSource rng(cfg.seed, streams::evaluation + t);
                    const SlotRealization slot = simulate_slot(sc, layout, qam, rng, cfg.n_ct);
                    double r = 0.0;
                    std::vector<double> e(n_est, 0.0);
                    for (const TxSymbol& sym : slot.symbols) {
                        const auto f = truth_pnac(sym, slot.alpha(), idx);
                        for (const auto& v : f)
                            r += std::norm(v);
                        for (std::size_t k = 0; k < n_est; ++k) {
                            const PnacEstimate fe = est[k](sym.y_f);
                            for (std::size_t i = 0; i < f.size(); ++i)
                                e[k] += std::norm(fe.f_bar[i] - f[i]);
                        }
                    }
                    ref[t] = r;
                    for (std::size_t k = 0; k < n_est; ++k)
                        err[k][t] = e[k];
                });

                for (std::size_t k = 0; k < n_est; ++k) {
                    const EstimatorKind kind = cfg.estimators[k];
                    const RatioEstimate nm = ratio_of_means(err[k], ref);
                    ExperimentRecord r = base_record(cfg, "nmse_pnac");
                    r.beta_hz = beta;
                    r.gamma = gamma;
                    r.estimator = to_string(kind);
                    r.mode = "proposed";
                    r.snr_db = snr_db;
                    r.metric = "nmse_pnac";
                    r.empirical = nm.value;
                    r.stderr_value = nm.stderr_value;
                    r.closed_form = nmse_pnac_closed(kind, stats, snr);
                    if (kind == EstimatorKind::ls)
                        r.approx = nmse_pnac_approx(stats.p_dom, stats.n_p(), snr);
                    r.trials = cfg.trials;
                    out.push_back(r);
                }
            }
        }
    return out;
}

// Effective-error calibration

std::vector<ExperimentRecord> run_calibration(const ScenarioConfig& cfg, const RunOptions& opts)
{
    std::vector<ExperimentRecord> out;
    CalibrationCache cache = open_cache(opts);
    for (double beta : cfg.betas)
        for (int gamma : cfg.gammas) {
            LinkScenario base = make_scenario(cfg.ofdm, cfg.n_cb, cfg.n_ct, beta, gamma, 0.0);
            base.qam_order = cfg.modulation;
            try {
                build_layout(base.ofdm, base.coherence, gamma);
            } catch (const LayoutInfeasible&) {
                out.push_back(infeasible_record(cfg, "calibration", beta, gamma));
                continue;
            }
            const PnStats stats = make_pn_stats(base.oscillator, cfg.ofdm.n, gamma);
            for (double snr_db : cfg.snr_db) {
                log_point(opts, "calibrate", beta, gamma, snr_db);
                LinkScenario sc = base;
                sc.snr_db = snr_db;
                const CalibrationResult c = calibrated(cfg, opts, cache, sc, stats);
                auto row = [&](const char* metric, double value, double se) {
                    ExperimentRecord r = base_record(cfg, "calibration");
                    r.beta_hz = beta;
                    r.gamma = gamma;
                    r.estimator = to_string(cfg.calibration_estimator);
                    r.mode = "proposed";
                    r.snr_db = snr_db;
                    r.metric = metric;
                    r.empirical = value;
                    r.stderr_value = se;
                    r.trials = c.trials;
                    out.push_back(r);
                };
                row("sigma_eps_sq", c.sigma_eps_sq, c.sigma_eps_sq_stderr);
                row("g_bar", c.g_bar, c.g_bar_stderr);
                row("sigma_eps_sq_raw", c.sigma_eps_sq_raw, c.sigma_eps_sq_raw_stderr);
                if (c.low_trial_warning)
                    row("warning_low_trials", 1.0, 0.0);
            }
        }
    cache.save();
    return out;
}

// ICI-free-channel NMSE

std::vector<ExperimentRecord> run_nmse_ifc(const ScenarioConfig& cfg, const RunOptions& opts)
{
    std::vector<ExperimentRecord> out;
    CalibrationCache cache = open_cache(opts);
    const QamSpec qam(cfg.modulation);
    for (double beta : cfg.betas)
        for (int gamma : cfg.gammas) {
            LinkScenario base = make_scenario(cfg.ofdm, cfg.n_cb, cfg.n_ct, beta, gamma, 0.0);
            base.qam_order = cfg.modulation;
            PilotLayout layout;
            try {
                layout = build_layout(base.ofdm, base.coherence, gamma);
            } catch (const LayoutInfeasible&) {
                out.push_back(infeasible_record(cfg, "nmse_ifc", beta, gamma));
                continue;
            }
            const PnStats stats = make_pn_stats(base.oscillator, cfg.ofdm.n, gamma);

            for (double snr_db : cfg.snr_db) {
                log_point(opts, "nmse-ifc", beta, gamma, snr_db);
                LinkScenario sc = base;
                sc.snr_db = snr_db;
                const double snr = sc.snr_linear();
                const CalibrationResult cal = calibrated(cfg, opts, cache, sc, stats);
                const PnacEstimator pnac(layout, cfg.calibration_estimator, &stats, snr);

                const std::size_t n_est = cfg.estimators.size();
                std::vector<std::vector<double>> err(n_est, std::vector<double>(cfg.trials));
                std::vector<std::vector<double>> err_raw(n_est, std::vector<double>(cfg.trials));
                std::vector<double> ref(cfg.trials), ref_raw(cfg.trials);
                parallel_for(cfg.trials, opts.threads, [&](std::size_t t) {
                    run_trial(cfg.seed, t, [&](RandomSource& rng) {
                        const SlotRealization slot = simulate_slot(sc, layout, qam, rng, 1);
                        const TxSymbol& sym = slot.symbols.front();
                        const PnacEstimate fe = pnac(sym.y_f);
                        const ComplexVec g = pn_time_response(fe.f_sparse);
                        if (!deconvolvable(g))
                            return false;
                        const ComplexVec y_if = suppress_ici(sym.y_f, fe);
                        const EffectiveError eff = measure_effective_error(g, slot.alpha(), sym.pn, fe.f_sparse);
                        const ComplexVec h_ref = ifc_reference(slot.channel, slot.alpha(), eff.common);
                        // Per-trial weight |alpha|^2 / mean|u|^2 keeps both sums finite when alpha fades.
                        const double w = std::norm(slot.alpha()) / eff.power;
                        double r = 0.0;
                        for (const auto& h : h_ref)
                            r += std::norm(h);
                        ref[t] = r * w;
                        ref_raw[t] = r;
                        for (std::size_t k = 0; k < n_est; ++k) {
                            const IfcEstimate he = estimate_ifc(y_if, layout, cfg.estimators[k], cal.sigma_eps_sq, snr);
                            double e = 0.0;
                            for (std::size_t m = 0; m < h_ref.size(); ++m)
                                e += std::norm(he.h_if[m] - h_ref[m]);
                            err[k][t] = e * w;
                            err_raw[k][t] = e;
                        }
                        return true;
                    });
                });

                for (std::size_t k = 0; k < n_est; ++k) {
                    const EstimatorKind kind = cfg.estimators[k];
                    const RatioEstimate nm = ratio_of_means(err[k], ref);
                    ExperimentRecord r = base_record(cfg, "nmse_ifc");
                    r.beta_hz = beta;
                    r.gamma = gamma;
                    r.estimator = to_string(kind);
                    r.mode = "proposed";
                    r.snr_db = snr_db;
                    r.metric = "nmse_ifc";
                    r.empirical = nm.value;
                    r.stderr_value = nm.stderr_value;
                    r.closed_form = nmse_ifc_closed(kind, cal.sigma_eps_sq, snr);
                    r.approx = nmse_ifc_floor(kind, cal.sigma_eps_sq);
                    r.trials = cfg.trials;
                    out.push_back(r);

                    const RatioEstimate raw = ratio_of_means(err_raw[k], ref_raw);
                    ExperimentRecord rr = r;
                    rr.metric = "nmse_ifc_unweighted";
                    rr.empirical = raw.value;
                    rr.stderr_value = raw.stderr_value;
                    rr.closed_form.reset();
                    rr.approx.reset();
                    out.push_back(rr);
                }
                ExperimentRecord s = base_record(cfg, "nmse_ifc");
                s.beta_hz = beta;
                s.gamma = gamma;
                s.estimator = to_string(cfg.calibration_estimator);
                s.mode = "proposed";
                s.snr_db = snr_db;
                s.metric = "sigma_eps_sq";
                s.empirical = cal.sigma_eps_sq;
                s.stderr_value = cal.sigma_eps_sq_stderr;
                s.trials = cal.trials;
                out.push_back(s);
            }
        }
    cache.save();
    return out;
}

// Bit error rate

namespace {

struct BerCounts
{
    std::vector<double> errors;
    std::vector<double> bits;
};

long long count_errors(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b)
{
    long long e = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e += a[i] != b[i];
    return e;
}

} // namespace

std::vector<ExperimentRecord> run_ber(const ScenarioConfig& cfg, const RunOptions& opts)
{
    std::vector<ExperimentRecord> out;
    CalibrationCache cache = open_cache(opts);
    const QamSpec qam(cfg.modulation);
    auto has_mode = [&](Mode m) { return std::find(cfg.modes.begin(), cfg.modes.end(), m) != cfg.modes.end(); };
    const bool proposed = has_mode(Mode::proposed);
    const bool np_perfect = has_mode(Mode::np_perfect);
    const bool no_pn = has_mode(Mode::no_pn);

    for (double beta : cfg.betas)
        for (int gamma : cfg.gammas) {
            LinkScenario base = make_scenario(cfg.ofdm, cfg.n_cb, cfg.n_ct, beta, gamma, 0.0);
            base.qam_order = cfg.modulation;
            PilotLayout layout;
            try {
                layout = build_layout(base.ofdm, base.coherence, gamma);
            } catch (const LayoutInfeasible&) {
                out.push_back(infeasible_record(cfg, "ber", beta, gamma));
                continue;
            }
            const PnStats stats = make_pn_stats(base.oscillator, cfg.ofdm.n, gamma);
            const auto idx = dominant_indices(cfg.ofdm.n, gamma);

            for (double snr_db : cfg.snr_db) {
                log_point(opts, "ber", beta, gamma, snr_db);
                LinkScenario sc = base;
                sc.snr_db = snr_db;
                const double snr = sc.snr_linear();

                const std::size_t n_est = proposed ? cfg.estimators.size() : 0;
                std::vector<PnacEstimator> pnac;
                std::vector<double> sigma(n_est, 0.0);
                for (std::size_t k = 0; k < n_est; ++k) {
                    pnac.emplace_back(layout, cfg.estimators[k], &stats, snr);
                    if (cfg.estimators[k] == EstimatorKind::lmmse)
                        sigma[k] = calibrated(cfg, opts, cache, sc, stats).sigma_eps_sq;
                }

                auto make_counts = [&] { return BerCounts{std::vector<double>(cfg.trials), std::vector<double>(cfg.trials)}; };
                std::vector<BerCounts> prop(n_est, make_counts()), prop_genie(n_est, make_counts());
                BerCounts perfect = make_counts(), clean = make_counts();

                parallel_for(cfg.trials, opts.threads, [&](std::size_t t) {
                    if (proposed || np_perfect)
                        run_trial(cfg.seed, t, [&](RandomSource& rng) {
                            const SlotRealization slot = simulate_slot(sc, layout, qam, rng, cfg.n_ct);
                            const cplx alpha = slot.alpha();
                            std::vector<double> e(n_est, 0.0), eg(n_est, 0.0);
                            double ep = 0.0, bits = 0.0;
                            std::vector<IfcEstimate> held(n_est);
                            for (const TxSymbol& sym : slot.symbols) {
                                bits += static_cast<double>(sym.bits.size());
                                for (std::size_t k = 0; k < n_est; ++k) {
                                    const PnacEstimate fe = pnac[k](sym.y_f);
                                    const ComplexVec g = pn_time_response(fe.f_sparse);
                                    if (!deconvolvable(g))
                                        return false;
                                    const ComplexVec y_if = suppress_ici(sym.y_f, fe);
                                    if (sym.kind == SymbolKind::pilot)
                                        held[k] = estimate_ifc(y_if, layout, cfg.estimators[k], sigma[k], snr);
                                    e[k] += count_errors(equalize_detect(y_if, held[k], layout, qam, sym.kind), sym.bits);
                                    const EffectiveError eff = measure_effective_error(g, alpha, sym.pn, fe.f_sparse);
                                    const IfcEstimate genie{ifc_reference(slot.channel, alpha, eff.common)};
                                    eg[k] += count_errors(equalize_detect(y_if, genie, layout, qam, sym.kind), sym.bits);
                                }
                                if (np_perfect) {
                                    const PnacEstimate fe = make_pnac_estimate(truth_pnac(sym, alpha, idx), cfg.ofdm.n, gamma);
                                    const ComplexVec g = pn_time_response(fe.f_sparse);
                                    if (!deconvolvable(g))
                                        return false;
                                    const ComplexVec y_if = suppress_ici(sym.y_f, fe);
                                    const EffectiveError eff = measure_effective_error(g, alpha, sym.pn, fe.f_sparse);
                                    const IfcEstimate genie{ifc_reference(slot.channel, alpha, eff.common)};
                                    ep += count_errors(equalize_detect(y_if, genie, layout, qam, sym.kind), sym.bits);
                                }
                            }
                            for (std::size_t k = 0; k < n_est; ++k) {
                                prop[k].errors[t] = e[k];
                                prop[k].bits[t] = bits;
                                prop_genie[k].errors[t] = eg[k];
                                prop_genie[k].bits[t] = bits;
                            }
                            perfect.errors[t] = ep;
                            perfect.bits[t] = bits;
                            return true;
                        });
                    if (no_pn) {
                        LinkScenario clean_sc = sc;
                        clean_sc.phase_noise = false;
                        clean_sc.oscillator.beta_hz = 0.0;
                        RandomSource rng(cfg.seed, streams::evaluation + t);
                        const SlotRealization slot = simulate_slot(clean_sc, layout, qam, rng, cfg.n_ct);
                        const IfcEstimate known{slot.channel.h_blocks};
                        double e = 0.0, bits = 0.0;
                        for (const TxSymbol& sym : slot.symbols) {
                            bits += static_cast<double>(sym.bits.size());
                            e += count_errors(equalize_detect(sym.y_f, known, layout, qam, sym.kind), sym.bits);
                        }
                        clean.errors[t] = e;
                        clean.bits[t] = bits;
                    }
                });

                auto emit = [&](const BerCounts& c, const std::string& estimator, Mode mode, const char* metric,
                                std::optional<double> closed) {
                    const RatioEstimate b = ratio_of_means(c.errors, c.bits);
                    ExperimentRecord r = base_record(cfg, "ber");
                    r.beta_hz = beta;
                    r.gamma = gamma;
                    r.estimator = estimator;
                    r.mode = to_string(mode);
                    r.snr_db = snr_db;
                    r.metric = metric;
                    r.empirical = b.value;
                    r.stderr_value = b.stderr_value;
                    r.closed_form = closed;
                    r.trials = cfg.trials;
                    out.push_back(r);
                };
                for (std::size_t k = 0; k < n_est; ++k) {
                    emit(prop[k], to_string(cfg.estimators[k]), Mode::proposed, "ber", std::nullopt);
                    emit(prop_genie[k], to_string(cfg.estimators[k]), Mode::proposed, "ber_ifc_genie", std::nullopt);
                }
                if (np_perfect)
                    emit(perfect, "genie", Mode::np_perfect, "ber", std::nullopt);
                if (no_pn)
                    emit(clean, "genie", Mode::no_pn, "ber", ber_qam_rayleigh(cfg.modulation, snr));
            }
        }
    cache.save();
    return out;
}

// Throughput and overhead

std::vector<ExperimentRecord> run_throughput(const ScenarioConfig& cfg,
                                             const RunOptions& opts,
                                             const std::vector<ExperimentRecord>* ber_records)
{
    std::vector<ExperimentRecord> computed;
    if (!ber_records) {
        computed = run_ber(cfg, opts);
        ber_records = &computed;
    }
    const ThroughputSpec& tp = cfg.throughput;
    auto rate = [&](double rho, double ber) {
        return throughput(rho, tp.n_c, tp.n_re, tp.n_ofdm, tp.t_slot_s, tp.bits_per_symbol, ber);
    };

    std::vector<ExperimentRecord> out;
    std::map<std::tuple<double, double, std::string, std::string>, std::pair<double, int>> best;
    for (const auto& b : *ber_records) {
        if (b.metric != "ber" || !b.empirical || !b.gamma)
            continue;
        const int n_p = 2 * *b.gamma + 1;
        const double rho = pilot_overhead(tp.n_occupied, tp.n_ct, tp.n_c, n_p);
        ExperimentRecord r = b;
        r.experiment = "throughput";
        r.metric = "throughput_bps";
        r.empirical = rate(rho, *b.empirical);
        r.stderr_value = b.stderr_value ? std::optional<double>(rate(rho, 0.0) * *b.stderr_value) : std::nullopt;
        r.closed_form = b.closed_form ? std::optional<double>(rate(rho, *b.closed_form)) : std::nullopt;
        r.approx = rate(rho, 0.0);
        out.push_back(r);

        auto key = std::make_tuple(*b.beta_hz, *b.snr_db, b.estimator, b.mode);
        auto it = best.find(key);
        if (it == best.end() || *r.empirical > it->second.first)
            best[key] = {*r.empirical, *b.gamma};
    }
    for (const auto& [key, value] : best) {
        ExperimentRecord r = base_record(cfg, "throughput");
        r.beta_hz = std::get<0>(key);
        r.snr_db = std::get<1>(key);
        r.estimator = std::get<2>(key);
        r.mode = std::get<3>(key);
        r.metric = "best_gamma";
        r.empirical = value.second;
        out.push_back(r);
    }
    for (int gamma : cfg.gammas) {
        ExperimentRecord r = base_record(cfg, "throughput");
        r.gamma = gamma;
        r.metric = "pilot_overhead";
        r.closed_form = pilot_overhead(tp.n_occupied, tp.n_ct, tp.n_c, 2 * gamma + 1);
        r.n = tp.n_occupied;
        r.n_cb = tp.n_occupied % tp.n_c == 0 ? std::optional<int>(tp.n_occupied / tp.n_c) : std::nullopt;
        r.n_ct = tp.n_ct;
        out.push_back(r);
    }
    return out;
}

std::vector<ExperimentRecord> run_overhead(const ScenarioConfig& cfg)
{
    std::vector<ExperimentRecord> out;
    for (const auto& c : cfg.overhead)
        for (int gamma : cfg.gammas) {
            ExperimentRecord r;
            r.experiment = "overhead";
            r.gamma = gamma;
            r.metric = "pilot_overhead";
            r.closed_form = pilot_overhead(c.n, c.n_ct, c.n_c, 2 * gamma + 1);
            r.n = c.n;
            r.n_cb = c.n / c.n_c;
            r.n_ct = c.n_ct;
            out.push_back(r);
        }
    return out;
}

} // namespace pnofdm::harness
