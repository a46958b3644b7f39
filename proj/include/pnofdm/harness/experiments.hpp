#pragma once

#include "pnofdm/estimators.hpp"
#include "pnofdm/harness/config.hpp"
#include "pnofdm/harness/csv.hpp"
#include "pnofdm/simulation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pnofdm::harness {

struct RunOptions
{
    int threads = 1;
    std::string cache_path; // calibration cache file; empty disables caching
    bool verbose = false;
};

// Calibration results keyed by scenario, persisted as JSON.
class CalibrationCache
{
public:
    CalibrationCache() = default;
    explicit CalibrationCache(std::string path);

    std::optional<CalibrationResult> find(const std::string& key) const;
    void store(const std::string& key, const CalibrationResult& r);
    void save() const;
    std::size_t size() const { return entries_.size(); }

private:
    std::string path_;
    std::map<std::string, CalibrationResult> entries_;
};

std::string calibration_key(const LinkScenario& sc, EstimatorKind kind, int trials, std::uint64_t seed);

std::vector<ExperimentRecord> run_nmse_pnac(const ScenarioConfig& cfg, const RunOptions& opts);
std::vector<ExperimentRecord> run_nmse_ifc(const ScenarioConfig& cfg, const RunOptions& opts);
std::vector<ExperimentRecord> run_calibration(const ScenarioConfig& cfg, const RunOptions& opts);
std::vector<ExperimentRecord> run_ber(const ScenarioConfig& cfg, const RunOptions& opts);
// Uses the given BER records, or runs the BER campaign when none are passed.
std::vector<ExperimentRecord> run_throughput(const ScenarioConfig& cfg,
                                             const RunOptions& opts,
                                             const std::vector<ExperimentRecord>* ber_records = nullptr);
std::vector<ExperimentRecord> run_overhead(const ScenarioConfig& cfg);

} // namespace pnofdm::harness
