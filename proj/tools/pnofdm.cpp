// pnofdm: phase-noise OFDM Monte Carlo campaigns.
#include "pnofdm/harness/config.hpp"
#include "pnofdm/harness/csv.hpp"
#include "pnofdm/harness/experiments.hpp"
#include "pnofdm/types.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace pnofdm;
using namespace pnofdm::harness;

namespace {

constexpr int exit_config_error = 2;
constexpr int exit_numerical_failure = 3;

void emit(const fs::path& dir, const char* name, const std::vector<ExperimentRecord>& records)
{
    const fs::path path = dir / name;
    write_csv_file(path.string(), records);
    std::cout << "wrote " << path.string() << " (" << records.size() << " rows)\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Phase-noise OFDM link simulation campaigns"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool verbose = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"nmse-pnac", "PN-affected-channel NMSE versus SNR"},
        {"nmse-ifc", "ICI-free-channel NMSE versus SNR"},
        {"ber", "uncoded bit error rate for the configured modes"},
        {"throughput", "throughput from simulated BER and pilot overhead"},
        {"overhead", "pilot-overhead table"},
        {"calibrate", "effective-error variance calibration"},
        {"all", "every campaign above"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON scenario file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--verbose", verbose, "log each scenario point to stderr");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    ScenarioConfig cfg;
    try {
        cfg = load_config(config_path);
        if (seed)
            cfg.seed = *seed;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }

    try {
        const fs::path dir(out_dir);
        fs::create_directories(dir);
        RunOptions opts;
        opts.threads = threads;
        opts.cache_path = (dir / "calibration_cache.json").string();
        opts.verbose = verbose;

        const bool all = command == "all";
        if (all || command == "overhead")
            emit(dir, "overhead.csv", run_overhead(cfg));
        if (all || command == "calibrate")
            emit(dir, "calibration.csv", run_calibration(cfg, opts));
        if (all || command == "nmse-pnac")
            emit(dir, "nmse_pnac.csv", run_nmse_pnac(cfg, opts));
        if (all || command == "nmse-ifc")
            emit(dir, "nmse_ifc.csv", run_nmse_ifc(cfg, opts));
        if (all) {
            const auto ber = run_ber(cfg, opts);
            emit(dir, "ber.csv", ber);
            emit(dir, "throughput.csv", run_throughput(cfg, opts, &ber));
        } else if (command == "ber") {
            emit(dir, "ber.csv", run_ber(cfg, opts));
        } else if (command == "throughput") {
            emit(dir, "throughput.csv", run_throughput(cfg, opts));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical_failure;
    } catch (const SingularMatrix& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
