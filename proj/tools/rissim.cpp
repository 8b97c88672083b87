// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission
//
// CLI driver: Monte Carlo BER sweeps and union-bound theory curves for
// RIS-assisted MIMO / spatial modulation links.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "rissim/analysis.hpp"
#include "rissim/harness.hpp"

namespace {

int run_sweep(rissim::LinkConfig cfg) {
    cfg.validate();
    rissim::SweepResult result;
    if (cfg.simulate) {
        result = rissim::run_ber_sweep(cfg);
        std::cerr << "# " << result.provenance.version << " | seed " << cfg.seed
                  << " | config " << std::hex << result.provenance.config_hash << std::dec
                  << " | " << result.provenance.wall_seconds << " s\n";
    } else {
        result.config = cfg;
    }
    if (cfg.theory || !cfg.simulate) {
        rissim::SweepResult theory = rissim::run_theory_curve(cfg);
        if (result.provenance.version.empty()) result.provenance = theory.provenance;
        for (auto& rec : theory.records) result.records.push_back(std::move(rec));
    }
    if (!cfg.out.empty()) {
        rissim::emit_csv(result, cfg.out);
        if (!cfg.gnuplot_out.empty()) {
            rissim::emit_gnuplot(result, cfg.out, cfg.gnuplot_out);
        }
    } else {
        std::cout << rissim::to_csv(result);
    }
    return 0;
}

int run_mu(int max_tx, int max_rx, long trials, std::uint64_t seed) {
    std::printf("tx,rx,mu_formula,mu_estimated,stderr\n");
    for (int tx = 1; tx <= max_tx; ++tx) {
        for (int rx = 1; rx <= max_rx; ++rx) {
            rissim::Rng rng(seed, static_cast<std::uint64_t>(tx), static_cast<std::uint64_t>(rx));
            double se = 0.0;
            const auto est = rissim::estimate_mu(tx, rx, trials, rng, &se);
            std::printf("%d,%d,%.9g,%.9g,%.3g\n", tx, rx, rissim::mu_formula(tx, rx),
                        est.real(), se);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted MIMO link-level simulator"};
    app.require_subcommand(1);

    rissim::LinkConfig cfg;
    std::string config_path, scheme_str, variant_str, pathloss_str, esn0_str;

    auto* sweep = app.add_subcommand("sweep", "run a BER sweep and/or theory curve");
    sweep->add_option("--config", config_path, "flat key=value config file");
    sweep->add_option("--scheme", scheme_str, "mimo|sm");
    auto* o_tx = sweep->add_option("--tx", cfg.tx, "transmit antennas");
    auto* o_rx = sweep->add_option("--rx", cfg.rx, "receive antennas");
    auto* o_n = sweep->add_option("--n-ris", cfg.n_ris, "reflecting elements");
    auto* o_m = sweep->add_option("--mod-order", cfg.mod_order, "PSK order (power of two)");
    sweep->add_option("--variant", variant_str, "verbatim|signed");
    auto* o_q = sweep->add_option("--quantize-levels", "discrete phase levels L");
    auto* o_s = sweep->add_option("--sigma-e2", cfg.sigma_e2, "CSI error variance");
    sweep->add_option("--pathloss", pathloss_str, "d1,d2,freqGHz");
    sweep->add_option("--esn0", esn0_str, "start:step:stop or comma list, dB");
    auto* o_t = sweep->add_option("--trials", cfg.max_trials, "max trials per point");
    auto* o_e = sweep->add_option("--min-errors", cfg.min_bit_errors, "early-stop bit errors");
    auto* o_seed = sweep->add_option("--seed", cfg.seed, "rng seed");
    auto* o_w = sweep->add_option("--workers", cfg.workers, "worker threads");
    auto* o_qo = sweep->add_option("--quadrature-order", cfg.quadrature_order,
                                   "Gauss-Legendre order for theory");
    sweep->add_flag("--theory", "also emit the ABEP union-bound curve");
    sweep->add_flag("--no-sim", "skip simulation (theory only)");
    sweep->add_flag("--noiseless", "noiseless sanity mode");
    sweep->add_flag("--normalize-total-power", "divide x by sqrt(Tx)");
    auto* o_out = sweep->add_option("--out", cfg.out, "output CSV path (default stdout)");
    auto* o_gp = sweep->add_option("--gnuplot", cfg.gnuplot_out, "also write a gnuplot script");

    int mu_tx = 4, mu_rx = 4;
    long mu_trials = 100000;
    std::uint64_t mu_seed = 1;
    auto* mu = app.add_subcommand("mu", "composite-channel mean estimate vs formula");
    mu->add_option("--max-tx", mu_tx, "largest Tx");
    mu->add_option("--max-rx", mu_rx, "largest Rx");
    mu->add_option("--trials", mu_trials, "Monte Carlo trials per configuration");
    mu->add_option("--seed", mu_seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mu->parsed()) return run_mu(mu_tx, mu_rx, mu_trials, mu_seed);

        rissim::LinkConfig file_cfg;
        if (!config_path.empty()) file_cfg = rissim::parse_config_file(config_path);

        // command-line flags override the config file
        auto merged = file_cfg;
        if (!scheme_str.empty()) rissim::apply_config_line(merged, "scheme", scheme_str);
        if (!variant_str.empty()) rissim::apply_config_line(merged, "variant", variant_str);
        if (*o_tx) merged.tx = cfg.tx;
        if (*o_rx) merged.rx = cfg.rx;
        if (*o_n) merged.n_ris = cfg.n_ris;
        if (*o_m) merged.mod_order = cfg.mod_order;
        if (*o_q) merged.quantize_levels = o_q->as<int>();
        if (*o_s) merged.sigma_e2 = cfg.sigma_e2;
        if (!pathloss_str.empty()) {
            std::stringstream ss(pathloss_str);
            std::string d1, d2, f;
            if (!std::getline(ss, d1, ',') || !std::getline(ss, d2, ',') ||
                !std::getline(ss, f, ',')) {
                throw rissim::ConfigError("--pathloss expects d1,d2,freqGHz");
            }
            rissim::apply_config_line(merged, "d1", d1);
            rissim::apply_config_line(merged, "d2", d2);
            rissim::apply_config_line(merged, "freq_ghz", f);
        }
        if (!esn0_str.empty()) merged.esn0_grid_db = rissim::parse_grid(esn0_str);
        if (*o_t) merged.max_trials = cfg.max_trials;
        if (*o_e) merged.min_bit_errors = cfg.min_bit_errors;
        if (*o_seed) merged.seed = cfg.seed;
        if (*o_w) merged.workers = cfg.workers;
        if (*o_qo) merged.quadrature_order = cfg.quadrature_order;
        if (sweep->count("--theory") > 0) merged.theory = true;
        if (sweep->count("--no-sim") > 0) merged.simulate = false;
        if (sweep->count("--noiseless") > 0) merged.noiseless = true;
        if (sweep->count("--normalize-total-power") > 0) merged.normalize_total_power = true;
        if (*o_out) merged.out = cfg.out;
        if (*o_gp) merged.gnuplot_out = cfg.gnuplot_out;

        return run_sweep(std::move(merged));
    } catch (const rissim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rissim::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
