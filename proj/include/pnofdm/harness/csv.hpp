#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pnofdm::harness {

inline constexpr const char* csv_schema_line = "# pnofdm-csv v1";
inline constexpr const char* csv_columns =
    "experiment,beta_hz,gamma,estimator,mode,snr_db,metric,empirical,stderr,closed_form,approx,trials,n,n_cb,n_ct,seed";

struct ExperimentRecord
{
    std::string experiment;
    std::optional<double> beta_hz;
    std::optional<int> gamma;
    std::string estimator;
    std::string mode;
    std::optional<double> snr_db; // +inf prints as "inf"
    std::string metric;
    std::optional<double> empirical;
    std::optional<double> stderr_value;
    std::optional<double> closed_form;
    std::optional<double> approx;
    std::optional<long long> trials;
    std::optional<int> n;
    std::optional<int> n_cb;
    std::optional<int> n_ct;
    std::optional<std::uint64_t> seed;
};

// Orders by (experiment, beta, gamma, estimator, mode, snr, metric); blanks first.
void sort_records(std::vector<ExperimentRecord>& records);

std::string format_number(double v);
std::string to_csv_row(const ExperimentRecord& r);
void write_csv(std::ostream& out, std::vector<ExperimentRecord> records);
void write_csv_file(const std::string& path, const std::vector<ExperimentRecord>& records);

} // namespace pnofdm::harness
