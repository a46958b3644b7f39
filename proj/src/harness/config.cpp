#include "pnofdm/harness/config.hpp"

#include "pnofdm/pilots.hpp"
#include "pnofdm/types.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pnofdm::harness {

using nlohmann::json;

const char* to_string(Mode mode)
{
    switch (mode) {
    case Mode::proposed:
        return "proposed";
    case Mode::np_perfect:
        return "np_perfect";
    case Mode::no_pn:
        return "no_pn";
    }
    return "unknown";
}

Mode parse_mode(const std::string& name)
{
    if (name == "proposed")
        return Mode::proposed;
    if (name == "np_perfect")
        return Mode::np_perfect;
    if (name == "no_pn")
        return Mode::no_pn;
    throw ConfigError("unknown mode '" + name + "'");
}

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        throw ConfigError(where + ": expected an object");
    std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& item : obj.items())
        if (!known.count(item.key()))
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& out)
{
    if (!obj.contains(key))
        return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <typename T>
void read_list(const json& obj, const char* key, const std::string& where, std::vector<T>& out)
{
    if (!obj.contains(key))
        return;
    const json& v = obj.at(key);
    if (!v.is_array())
        throw ConfigError(where + "." + key + ": expected a list");
    try {
        out = v.get<std::vector<T>>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong element type");
    }
}

// Accepts a list of values or {"start", "stop", "step"}.
std::vector<double> read_grid(const json& v, const std::string& where)
{
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigError(where + ": expected numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    reject_unknown(v, where, {"start", "stop", "step"});
    if (!v.contains("start") || !v.contains("stop") || !v.contains("step"))
        throw ConfigError(where + ": range needs start, stop and step");
    double start = 0, stop = 0, step = 0;
    read(v, "start", where, start);
    read(v, "stop", where, stop);
    read(v, "step", where, step);
    if (!(step > 0.0) || stop < start)
        throw ConfigError(where + ": invalid range");
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i)
        out.push_back(start + i * step);
    return out;
}

} // namespace

void ScenarioConfig::validate() const
{
    try {
        ofdm.validate();
        CoherenceSpec::make(ofdm.n, n_cb, n_ct);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (betas.empty() || gammas.empty() || snr_db.empty())
        throw ConfigError("beta, gamma and SNR lists must be non-empty");
    for (double b : betas)
        if (!(b >= 0.0))
            throw ConfigError("beta_hz entries must be >= 0");
    for (int g : gammas)
        if (g < 0 || g > ofdm.n / 2 - 1 || 4 * g + 2 >= ofdm.n)
            throw ConfigError("gamma " + std::to_string(g) + " out of range for N");
    if (trials < 1 || calibration_trials < 1)
        throw ConfigError("trial counts must be >= 1");
    if (estimators.empty() || modes.empty())
        throw ConfigError("estimator and mode lists must be non-empty");
    try {
        QamSpec q(modulation);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (throughput.n_occupied < 1 || throughput.n_c < 1 || throughput.n_ct < 1 || throughput.n_re < 1 ||
        throughput.n_ofdm < 1 || !(throughput.t_slot_s > 0.0) || throughput.bits_per_symbol < 1)
        throw ConfigError("throughput parameters must be positive");
    for (const auto& c : overhead)
        if (c.n < 1 || c.n_ct < 1 || c.n_c < 1 || c.n % c.n_c != 0)
            throw ConfigError("overhead case needs positive sizes with N divisible by N_c");
}

ScenarioConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "config",
                   {"ofdm", "coherence", "oscillator", "gammas", "snr_db", "trials", "seed", "estimators",
                    "modulation", "modes", "calibration", "throughput", "overhead"});

    ScenarioConfig cfg;
    if (root.contains("ofdm")) {
        const json& o = root["ofdm"];
        reject_unknown(o, "ofdm", {"n", "n_cp", "delta_f_hz", "symbol_power"});
        read(o, "n", "ofdm", cfg.ofdm.n);
        read(o, "n_cp", "ofdm", cfg.ofdm.n_cp);
        read(o, "delta_f_hz", "ofdm", cfg.ofdm.delta_f_hz);
        read(o, "symbol_power", "ofdm", cfg.ofdm.symbol_power);
    }
    if (root.contains("coherence")) {
        const json& c = root["coherence"];
        reject_unknown(c, "coherence", {"n_cb", "n_ct"});
        read(c, "n_cb", "coherence", cfg.n_cb);
        read(c, "n_ct", "coherence", cfg.n_ct);
    }
    if (root.contains("oscillator")) {
        const json& o = root["oscillator"];
        reject_unknown(o, "oscillator", {"beta_hz"});
        read_list(o, "beta_hz", "oscillator", cfg.betas);
    }
    read_list(root, "gammas", "config", cfg.gammas);
    if (root.contains("snr_db"))
        cfg.snr_db = read_grid(root["snr_db"], "snr_db");
    read(root, "trials", "config", cfg.trials);
    read(root, "seed", "config", cfg.seed);
    read(root, "modulation", "config", cfg.modulation);
    if (root.contains("estimators")) {
        std::vector<std::string> names;
        read_list(root, "estimators", "config", names);
        cfg.estimators.clear();
        for (const auto& n : names) {
            try {
                cfg.estimators.push_back(parse_estimator(n));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (root.contains("modes")) {
        std::vector<std::string> names;
        read_list(root, "modes", "config", names);
        cfg.modes.clear();
        for (const auto& n : names)
            cfg.modes.push_back(parse_mode(n));
    }
    if (root.contains("calibration")) {
        const json& c = root["calibration"];
        reject_unknown(c, "calibration", {"trials", "estimator"});
        read(c, "trials", "calibration", cfg.calibration_trials);
        std::string est;
        read(c, "estimator", "calibration", est);
        if (!est.empty()) {
            try {
                cfg.calibration_estimator = parse_estimator(est);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (root.contains("throughput")) {
        const json& t = root["throughput"];
        reject_unknown(t, "throughput", {"n_occupied", "n_c", "n_ct", "n_re", "n_ofdm", "t_slot_s", "bits_per_symbol"});
        auto& tp = cfg.throughput;
        read(t, "n_occupied", "throughput", tp.n_occupied);
        read(t, "n_c", "throughput", tp.n_c);
        read(t, "n_ct", "throughput", tp.n_ct);
        read(t, "n_re", "throughput", tp.n_re);
        read(t, "n_ofdm", "throughput", tp.n_ofdm);
        read(t, "t_slot_s", "throughput", tp.t_slot_s);
        read(t, "bits_per_symbol", "throughput", tp.bits_per_symbol);
    }
    if (root.contains("overhead")) {
        const json& list = root["overhead"];
        if (!list.is_array())
            throw ConfigError("overhead: expected a list");
        cfg.overhead.clear();
        for (const auto& c : list) {
            reject_unknown(c, "overhead[]", {"n", "n_ct", "n_c"});
            OverheadCase oc;
            read(c, "n", "overhead[]", oc.n);
            read(c, "n_ct", "overhead[]", oc.n_ct);
            read(c, "n_c", "overhead[]", oc.n_c);
            cfg.overhead.push_back(oc);
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace pnofdm::harness
