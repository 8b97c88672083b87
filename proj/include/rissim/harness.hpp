// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rissim/analysis.hpp"
#include "rissim/channel.hpp"
#include "rissim/phase.hpp"
#include "rissim/transceiver.hpp"

namespace rissim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complete description of one sweep. The flat key-value config files mirror
// these field names.
struct LinkConfig {
    Scheme scheme = Scheme::RisMimo;
    int tx = 4;
    int rx = 4;
    int n_ris = 16;
    int mod_order = 2;
    PhaseVariant variant = PhaseVariant::Verbatim;
    std::optional<int> quantize_levels;
    double sigma_e2 = 0.0;
    std::optional<PathLossGeometry> pathloss;
    std::vector<double> esn0_grid_db;
    long long max_trials = 10'000'000;
    long long min_bit_errors = 200;
    std::uint64_t seed = 1;
    int quadrature_order = 64;
    int workers = 1;
    bool noiseless = false;
    bool normalize_total_power = false;
    bool theory = false;
    bool simulate = true;
    std::string out;
    std::string gnuplot_out;

    void validate() const;         // throws ConfigError
    std::string canonical() const; // stable one-line echo, also hashed
    std::uint64_t hash() const;
};

struct SweepProvenance {
    std::string config_echo;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string version;
    double wall_seconds = 0.0;
};

struct SweepResult {
    LinkConfig config;
    std::vector<BerRecord> records;
    SweepProvenance provenance;
};

// Monte Carlo BER sweep over the Es/N0 grid. Each (point, trial) pair owns
// an rng substream, trials are processed in fixed-size batches and stopping
// is decided at batch boundaries, so the output is a pure function of
// (config, seed) for any worker count.
SweepResult run_ber_sweep(const LinkConfig& cfg);

// ABEP union-bound curve over the same grid, stats from mu_formula.
SweepResult run_theory_curve(const LinkConfig& cfg);

std::string to_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);
void emit_gnuplot(const SweepResult& result, const std::string& csv_path,
                  const std::string& script_path);

// Flat "key = value" file, one setting per line, '#' comments.
LinkConfig parse_config_file(const std::string& path);
void apply_config_line(LinkConfig& cfg, const std::string& key, const std::string& value);

std::vector<double> parse_grid(const std::string& text);  // "a:step:b" or comma list

std::string scheme_name(Scheme s);
std::string variant_name(PhaseVariant v);

}  // namespace rissim
