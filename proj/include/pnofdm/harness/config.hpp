#pragma once

#include "pnofdm/estimators.hpp"
#include "pnofdm/link.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pnofdm::harness {

enum class Mode
{
    proposed,
    np_perfect,
    no_pn,
};

const char* to_string(Mode mode);
Mode parse_mode(const std::string& name);

// Resource geometry used only for the overhead and throughput arithmetic.
struct ThroughputSpec
{
    int n_occupied = 3300;
    int n_c = 275;
    int n_ct = 7;
    int n_re = 12;
    int n_ofdm = 14;
    double t_slot_s = 0.25e-3;
    int bits_per_symbol = 4;
};

struct OverheadCase
{
    int n = 1200;
    int n_ct = 7;
    int n_c = 100;
};

struct ScenarioConfig
{
    OfdmSpec ofdm;
    int n_cb = 32;
    int n_ct = 1;
    std::vector<double> betas{5000.0};
    std::vector<int> gammas{0, 1, 3, 7};
    std::vector<double> snr_db{0.0, 10.0, 20.0, 30.0};
    int trials = 1000;
    std::uint64_t seed = 1;
    std::vector<EstimatorKind> estimators{EstimatorKind::ls, EstimatorKind::lmmse};
    int modulation = 16;
    std::vector<Mode> modes{Mode::proposed, Mode::np_perfect, Mode::no_pn};
    int calibration_trials = 1000;
    EstimatorKind calibration_estimator = EstimatorKind::lmmse;
    ThroughputSpec throughput;
    std::vector<OverheadCase> overhead{{1200, 7, 100}, {3300, 7, 275}};

    void validate() const;
};

// Parses the JSON document; unknown keys anywhere are rejected with ConfigError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

} // namespace pnofdm::harness
