#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "zakotfs/acquisition.hpp"
#include "zakotfs/equalizer.hpp"
#include "zakotfs/metrics.hpp"
#include "zakotfs/td.hpp"

namespace zakotfs {

/**
 * Monte-Carlo experiment description. Loaded from a JSON config file; every
 * field has a desk-scale default matching the reference link setup
 * (M=64, N=24, nu_p=7.5 kHz, Veh-A, beta=0.6, PDR 5 dB, SNR 25 dB).
 */
struct ExperimentConfig {
    // grid
    int m = 64;
    int n = 24;
    double nu_p_hz = 7500.0;
    // pulse shaping
    double beta_tau = 0.6;
    double beta_nu = 0.6;
    double cutoff = 40.0;
    int nodes_per_cell = 8;
    // channel
    std::string profile = "veh-a";
    std::vector<double> nu_max_hz = {1000.0};
    double tau_max_us = 2.51;
    int support_margin = 4;
    // frame
    std::vector<int> q_list = {1};
    std::string spacing = "regular"; // "regular" | "custom"
    std::vector<int> custom_delays;
    bool allow_aliasing = false;
    int k_max = -1; // -1: ceil(M tau_max / tau_p)
    std::vector<double> pdr_db = {5.0};
    std::vector<double> snr_db = {25.0};
    // estimators: "ls", "cross-ambiguity", "perfect-csi"
    std::vector<std::string> estimators = {"ls"};
    // execution
    int trials = 200;
    uint64_t seed = 1;
    int workers = 0; // 0 = hardware concurrency
    int oversample = 16;

    GridParams grid() const { return GridParams(m, n, nu_p_hz); }
    RRCFilterSpec filter() const {
        RRCFilterSpec s(beta_tau, beta_nu, grid());
        s.cutoff = cutoff;
        s.nodes_per_cell = nodes_per_cell;
        return s;
    }
    double tau_max_s() const { return tau_max_us * 1e-6; }
    int derived_k_max() const;
    Spacing make_spacing() const;

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

// One aggregate row of a sweep (CSV schema:
// q,nu_max_hz,snr_db,pdr_db,estimator,trials,ber,nmse,throughput).
struct SweepRow {
    int q = 0;
    double nu_max_hz = 0.0;
    double snr_db = 0.0;
    double pdr_db = 0.0;
    std::string estimator;
    int trials = 0;
    double ber = 0.0;
    double nmse = 0.0;
    double throughput = 0.0;
};

struct PaprRow {
    int q = 0;
    double papr_db = 0.0;
};

// Minimum number of regularly spaced interleaved pilots (a divisor of M)
// whose effective crystallization condition covers the given spreads.
int auto_q(const GridParams& params, double tau_max, double nu_max);

// Full link sweep over (Q, nu_max, SNR, PDR, estimator). with_detection=false
// skips MMSE detection (NMSE only; ber/throughput columns become NaN).
std::vector<SweepRow> run_ber_sweep(const ExperimentConfig& cfg, bool with_detection = true);

// BER vs PDR at the first configured nu_max.
std::vector<SweepRow> run_pdr_sweep(const ExperimentConfig& cfg);

// Throughput vs nu_max with Q auto-selected per point.
std::vector<SweepRow> run_throughput_sweep(const ExperimentConfig& cfg);

// Pilot-only PAPR per configured Q; optionally writes TD energy traces
// (time_s,energy) into out_dir.
std::vector<PaprRow> run_papr_report(const ExperimentConfig& cfg,
                                     const std::string& out_dir = "");

// |auto-ambiguity| and |cross-ambiguity| heatmaps over a two-period window for
// each configured Q and one channel draw; writes k,l,magnitude CSVs.
void run_ambiguity_report(const ExperimentConfig& cfg, const std::string& out_dir);

// Compact oracle/property suite; prints one [PASS]/[FAIL] line per check and
// returns the number of failures.
int run_validate(const ExperimentConfig& cfg, std::ostream& os);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_papr_csv(const std::string& path, const std::vector<PaprRow>& rows);
void write_heatmap_csv(const std::string& path, const AmbiguitySurface& surface);
void write_td_trace_csv(const std::string& path, const TDSignal& s);
void write_run_meta(const std::string& path, const ExperimentConfig& cfg);

} // namespace zakotfs
