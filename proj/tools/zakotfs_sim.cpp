// Command-line front end for the Zak-OTFS link simulator: Monte-Carlo sweeps,
// ambiguity heatmaps, PAPR reports and the built-in validation suite. All
// numeric results are written as CSV files under --out.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zakotfs/errors.hpp"
#include "zakotfs/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "results";
    std::optional<uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON experiment config");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "master seed (overrides config)");
    cmd->add_option("--trials", o.trials, "trials per point (overrides config)");
    cmd->add_option("--workers", o.workers, "worker threads, 0 = all cores");
}

zakotfs::ExperimentConfig load_config(const CommonOpts& o) {
    zakotfs::ExperimentConfig cfg;
    if (!o.config_path.empty())
        cfg = zakotfs::ExperimentConfig::from_json_file(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.trials) cfg.trials = *o.trials;
    if (o.workers) cfg.workers = *o.workers;
    return cfg;
}

void prepare_out(const CommonOpts& o, const zakotfs::ExperimentConfig& cfg) {
    std::filesystem::create_directories(o.out_dir);
    zakotfs::write_run_meta(o.out_dir + "/run_meta.json", cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zak-OTFS delay-Doppler link simulator"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* ber = app.add_subcommand("ber-sweep", "BER/NMSE/throughput vs (Q, nu_max, SNR, PDR)");
    auto* nmse = app.add_subcommand("nmse-sweep", "channel-estimation NMSE sweep (no detection)");
    auto* ambig = app.add_subcommand("ambiguity", "auto/cross ambiguity heatmaps");
    auto* papr = app.add_subcommand("papr", "pilot-only PAPR per Q with TD energy traces");
    auto* tput = app.add_subcommand("throughput", "effective throughput with auto-selected Q");
    auto* pdr = app.add_subcommand("pdr-sweep", "BER vs PDR at fixed nu_max");
    auto* validate = app.add_subcommand("validate", "run the oracle/property validation suite");
    for (auto* c : {ber, nmse, ambig, papr, tput, pdr, validate}) add_common(c, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        const zakotfs::ExperimentConfig cfg = load_config(o);
        if (ber->parsed()) {
            prepare_out(o, cfg);
            zakotfs::write_sweep_csv(o.out_dir + "/ber_sweep.csv",
                                     zakotfs::run_ber_sweep(cfg, true));
        } else if (nmse->parsed()) {
            prepare_out(o, cfg);
            zakotfs::write_sweep_csv(o.out_dir + "/nmse_sweep.csv",
                                     zakotfs::run_ber_sweep(cfg, false));
        } else if (ambig->parsed()) {
            prepare_out(o, cfg);
            zakotfs::run_ambiguity_report(cfg, o.out_dir);
        } else if (papr->parsed()) {
            prepare_out(o, cfg);
            zakotfs::write_papr_csv(o.out_dir + "/papr.csv",
                                    zakotfs::run_papr_report(cfg, o.out_dir));
        } else if (tput->parsed()) {
            prepare_out(o, cfg);
            zakotfs::write_sweep_csv(o.out_dir + "/throughput.csv",
                                     zakotfs::run_throughput_sweep(cfg));
        } else if (pdr->parsed()) {
            prepare_out(o, cfg);
            zakotfs::write_sweep_csv(o.out_dir + "/pdr_sweep.csv", zakotfs::run_pdr_sweep(cfg));
        } else if (validate->parsed()) {
            const int failures = zakotfs::run_validate(cfg, std::cout);
            if (failures > 0) {
                std::cerr << failures << " validation check(s) failed\n";
                return kExitNumeric;
            }
        }
    } catch (const zakotfs::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const zakotfs::layout_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const zakotfs::estimation_error& e) {
        std::cerr << "numerical failure: " << e.what() << " at tap (" << e.tap_k() << ","
                  << e.tap_l() << ")\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
