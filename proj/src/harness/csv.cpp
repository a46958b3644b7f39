#include "pnofdm/harness/csv.hpp"

#include "pnofdm/types.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <tuple>

namespace pnofdm::harness {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return fmt::format("{}", v);
}

namespace {

template <typename T>
std::string field(const std::optional<T>& v)
{
    if (!v)
        return {};
    if constexpr (std::is_floating_point_v<T>)
        return format_number(*v);
    else
        return std::to_string(*v);
}

// Blank sorts before any value.
template <typename T>
std::pair<bool, T> key(const std::optional<T>& v)
{
    return {v.has_value(), v.value_or(T{})};
}

} // namespace

void sort_records(std::vector<ExperimentRecord>& records)
{
    std::stable_sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
        return std::make_tuple(a.experiment, key(a.beta_hz), key(a.gamma), a.estimator, a.mode, key(a.snr_db), a.metric) <
               std::make_tuple(b.experiment, key(b.beta_hz), key(b.gamma), b.estimator, b.mode, key(b.snr_db), b.metric);
    });
}

std::string to_csv_row(const ExperimentRecord& r)
{
    std::string row;
    row.reserve(160);
    auto add = [&row](const std::string& s) {
        row += s;
        row += ',';
    };
    add(r.experiment);
    add(field(r.beta_hz));
    add(field(r.gamma));
    add(r.estimator);
    add(r.mode);
    add(field(r.snr_db));
    add(r.metric);
    add(field(r.empirical));
    add(field(r.stderr_value));
    add(field(r.closed_form));
    add(field(r.approx));
    add(field(r.trials));
    add(field(r.n));
    add(field(r.n_cb));
    add(field(r.n_ct));
    row += field(r.seed);
    return row;
}

void write_csv(std::ostream& out, std::vector<ExperimentRecord> records)
{
    sort_records(records);
    out << csv_schema_line << '\n' << csv_columns << '\n';
    for (const auto& r : records)
        out << to_csv_row(r) << '\n';
}

void write_csv_file(const std::string& path, const std::vector<ExperimentRecord>& records)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    write_csv(out, records);
}

} // namespace pnofdm::harness
