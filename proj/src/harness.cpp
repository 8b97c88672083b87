// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#include "rissim/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace rissim {

namespace {

constexpr const char* kVersion = "rissim 1.0.0";
constexpr long long kBatchTrials = 4096;  // stopping is decided at batch boundaries

std::string fmt_double(double v, const char* spec = "%.9g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

bool is_pow2(int v) { return v >= 1 && std::has_single_bit(static_cast<unsigned>(v)); }

struct TrialContext {
    const LinkConfig& cfg;
    const Codebook& book;
    double n0;
    double amplitude;
    std::size_t point_index;
};

// One Monte Carlo transmission; returns the bit error count.
int run_trial(const TrialContext& ctx, long long trial_index) {
    const LinkConfig& cfg = ctx.cfg;
    Rng rng(cfg.seed, ctx.point_index, static_cast<std::uint64_t>(trial_index));

    ChannelRealization chan;
    chan.H = sample_rayleigh(cfg.n_ris, cfg.tx, rng);
    chan.G = sample_rayleigh(cfg.n_ris, cfg.rx, rng);

    const bool imperfect = cfg.sigma_e2 > 0.0;
    if (imperfect) chan = apply_csi_error(chan, cfg.sigma_e2, rng);
    const Eigen::MatrixXcd& h_known = imperfect ? *chan.H_est : chan.H;
    const Eigen::MatrixXcd& g_known = imperfect ? *chan.G_est : chan.G;

    PhaseConfig phases = adapt_phases(h_known, g_known, cfg.variant);
    if (cfg.quantize_levels) {
        phases = quantize_phases(phases, QuantizerSpec{*cfg.quantize_levels});
    }

    // data propagates through the true channel; the detector holds the
    // estimated composite channel
    const Eigen::MatrixXcd c_true = compose_channel(chan.G, phases, chan.H);
    const Eigen::MatrixXcd c_det =
        imperfect ? compose_channel(g_known, phases, h_known) : c_true;

    const std::size_t index = rng.uniform_below(ctx.book.size());
    const Eigen::VectorXcd y = transmit(ctx.book.vectors[index], c_true, ctx.amplitude,
                                        ctx.n0, rng, cfg.noiseless);
    const std::size_t detected = ml_detect(y, ctx.amplitude * c_det, ctx.book);
    return count_bit_errors(index, detected, ctx.book);
}

long long run_batch(const TrialContext& ctx, long long first, long long count, int workers) {
    if (workers <= 1 || count < 2 * kBatchTrials / 64) {
        long long errors = 0;
        for (long long t = first; t < first + count; ++t) errors += run_trial(ctx, t);
        return errors;
    }
    std::vector<long long> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    const long long chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long long lo = first + w * chunk;
        const long long hi = std::min(first + count, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, w, lo, hi] {
            long long errors = 0;
            for (long long t = lo; t < hi; ++t) errors += run_trial(ctx, t);
            partial[static_cast<std::size_t>(w)] = errors;
        });
    }
    for (auto& th : threads) th.join();
    long long errors = 0;
    for (long long e : partial) errors += e;
    return errors;
}

Codebook make_codebook(const LinkConfig& cfg) {
    Codebook book = build_codebook(cfg.scheme, cfg.tx, cfg.mod_order);
    if (cfg.normalize_total_power && cfg.scheme == Scheme::RisMimo) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.tx));
        for (auto& v : book.vectors) v *= scale;
    }
    return book;
}

SweepProvenance make_provenance(const LinkConfig& cfg) {
    SweepProvenance prov;
    prov.config_echo = cfg.canonical();
    prov.config_hash = cfg.hash();
    prov.seed = cfg.seed;
    prov.version = kVersion;
    return prov;
}

BerRecord base_record(const LinkConfig& cfg, double esn0_db) {
    BerRecord rec;
    rec.scheme = cfg.scheme;
    rec.tx = cfg.tx;
    rec.rx = cfg.rx;
    rec.n_ris = cfg.n_ris;
    rec.mod_order = cfg.mod_order;
    rec.esn0_db = esn0_db;
    rec.trials = 0;
    rec.bit_errors = 0;
    rec.ber = 0.0;
    rec.config_hash = cfg.hash();
    return rec;
}

}  // namespace

std::string scheme_name(Scheme s) { return s == Scheme::RisMimo ? "mimo" : "sm"; }

std::string variant_name(PhaseVariant v) {
    return v == PhaseVariant::Verbatim ? "verbatim" : "signed";
}

void LinkConfig::validate() const {
    if (tx < 1 || rx < 1 || n_ris < 1) throw ConfigError("tx, rx and n_ris must be positive");
    if (!is_pow2(mod_order) || mod_order < 2)
        throw ConfigError("mod_order must be a power of two >= 2");
    if (scheme == Scheme::RisSm && !is_pow2(tx))
        throw ConfigError("RIS-SM requires a power-of-two tx");
    if (esn0_grid_db.empty()) throw ConfigError("esn0_grid_db must not be empty");
    for (std::size_t i = 1; i < esn0_grid_db.size(); ++i) {
        if (esn0_grid_db[i] <= esn0_grid_db[i - 1])
            throw ConfigError("esn0_grid_db must be strictly increasing");
    }
    if (max_trials < 1) throw ConfigError("max_trials must be >= 1");
    if (min_bit_errors < 1) throw ConfigError("min_bit_errors must be >= 1");
    if (sigma_e2 < 0.0) throw ConfigError("sigma_e2 must be nonnegative");
    if (quantize_levels && *quantize_levels < 1)
        throw ConfigError("quantize_levels must be positive");
    if (quadrature_order < 8) throw ConfigError("quadrature_order must be >= 8");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (pathloss) {
        if (pathloss->d1 <= 0.0 || pathloss->d2 <= 0.0 || pathloss->frequency <= 0.0)
            throw ConfigError("path loss geometry must be positive");
    }
}

std::string LinkConfig::canonical() const {
    std::ostringstream os;
    os << "scheme=" << scheme_name(scheme) << " tx=" << tx << " rx=" << rx
       << " n_ris=" << n_ris << " mod_order=" << mod_order
       << " variant=" << variant_name(variant);
    os << " quantize_levels=";
    if (quantize_levels) os << *quantize_levels;
    os << " sigma_e2=" << fmt_double(sigma_e2, "%.17g");
    os << " pathloss=";
    if (pathloss) {
        os << fmt_double(pathloss->d1, "%.17g") << "," << fmt_double(pathloss->d2, "%.17g")
           << "," << fmt_double(pathloss->frequency, "%.17g");
    }
    os << " esn0=";
    for (std::size_t i = 0; i < esn0_grid_db.size(); ++i) {
        if (i) os << ",";
        os << fmt_double(esn0_grid_db[i], "%.17g");
    }
    os << " max_trials=" << max_trials << " min_bit_errors=" << min_bit_errors
       << " seed=" << seed << " quadrature_order=" << quadrature_order
       << " noiseless=" << noiseless << " normalize_total_power=" << normalize_total_power;
    return os.str();
}

std::uint64_t LinkConfig::hash() const {
    // FNV-1a over the canonical echo
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

SweepResult run_ber_sweep(const LinkConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const Codebook book = make_codebook(cfg);
    const double amplitude = cfg.pathloss ? path_loss_amplitude(*cfg.pathloss) : 1.0;

    SweepResult result;
    result.config = cfg;
    result.provenance = make_provenance(cfg);

    for (std::size_t p = 0; p < cfg.esn0_grid_db.size(); ++p) {
        const double esn0_db = cfg.esn0_grid_db[p];
        const double n0 = std::pow(10.0, -esn0_db / 10.0);
        const TrialContext ctx{cfg, book, n0, amplitude, p};

        long long trials = 0;
        long long errors = 0;
        while (trials < cfg.max_trials && errors < cfg.min_bit_errors) {
            const long long batch = std::min(kBatchTrials, cfg.max_trials - trials);
            errors += run_batch(ctx, trials, batch, cfg.workers);
            trials += batch;
        }

        BerRecord rec = base_record(cfg, esn0_db);
        rec.trials = trials;
        rec.bit_errors = errors;
        rec.ber = static_cast<double>(errors) /
                  (static_cast<double>(trials) * book.bits_per_use);
        rec.source = "simulated";
        result.records.push_back(rec);
    }

    result.provenance.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SweepResult run_theory_curve(const LinkConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const Codebook book = make_codebook(cfg);
    const double amplitude = cfg.pathloss ? path_loss_amplitude(*cfg.pathloss) : 1.0;
    const CompositeStats stats = stats_from_formula(cfg.tx, cfg.rx, cfg.n_ris);
    const QuadratureSpec quad{cfg.quadrature_order};

    SweepResult result;
    result.config = cfg;
    result.provenance = make_provenance(cfg);

    for (double esn0_db : cfg.esn0_grid_db) {
        const double n0 = std::pow(10.0, -esn0_db / 10.0);
        // a deterministic amplitude scales Omega by a^2, i.e. scales varphi
        const double n0_eff = n0 / (amplitude * amplitude);
        BerRecord rec = base_record(cfg, esn0_db);
        rec.ber = abep_bound(book, stats, n0_eff, quad);
        rec.source = "theory";
        result.records.push_back(rec);
    }

    result.provenance.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string to_csv(const SweepResult& result) {
    const LinkConfig& cfg = result.config;
    std::ostringstream os;
    os << "scheme,tx,rx,n_ris,mod_order,variant,quant_levels,sigma_e2,d1,d2,"
          "esn0_db,source,trials,bit_errors,ber\n";
    for (const BerRecord& rec : result.records) {
        os << scheme_name(rec.scheme) << ',' << rec.tx << ',' << rec.rx << ',' << rec.n_ris
           << ',' << rec.mod_order << ',' << variant_name(cfg.variant) << ',';
        if (cfg.quantize_levels) os << *cfg.quantize_levels;
        os << ',' << fmt_double(cfg.sigma_e2) << ',';
        if (cfg.pathloss) os << fmt_double(cfg.pathloss->d1);
        os << ',';
        if (cfg.pathloss) os << fmt_double(cfg.pathloss->d2);
        os << ',' << fmt_double(rec.esn0_db) << ',' << rec.source << ',' << rec.trials << ','
           << rec.bit_errors << ',' << fmt_double(rec.ber) << '\n';
    }
    return os.str();
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << to_csv(result);
    if (!out) throw IoError("write failed: " + path);
}

void emit_gnuplot(const SweepResult& result, const std::string& csv_path,
                  const std::string& script_path) {
    std::ofstream out(script_path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + script_path);
    out << "set datafile separator ','\n"
        << "set logscale y\n"
        << "set grid\n"
        << "set xlabel 'Es/N0 (dB)'\n"
        << "set ylabel 'BER'\n"
        << "set title '" << scheme_name(result.config.scheme) << " " << result.config.tx << "x"
        << result.config.rx << ", N=" << result.config.n_ris << "'\n"
        << "plot '" << csv_path
        << "' using 11:(strcol(12) eq 'simulated' ? $15 : 1/0) with linespoints"
           " title 'simulated', \\\n     '"
        << csv_path
        << "' using 11:(strcol(12) eq 'theory' ? $15 : 1/0) with lines title 'union bound'\n";
    if (!out) throw IoError("write failed: " + script_path);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    const auto c1 = text.find(':');
    if (c1 != std::string::npos) {
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ConfigError("grid must be start:step:stop");
        const double start = std::stod(text.substr(0, c1));
        const double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const double stop = std::stod(text.substr(c2 + 1));
        if (step <= 0.0) throw ConfigError("grid step must be positive");
        for (double v = start; v <= stop + 1e-9 * std::max(1.0, std::abs(stop)); v += step) {
            grid.push_back(v);
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) grid.push_back(std::stod(item));
        }
    }
    if (grid.empty()) throw ConfigError("empty Es/N0 grid");
    return grid;
}

void apply_config_line(LinkConfig& cfg, const std::string& key, const std::string& value) {
    auto ensure_pathloss = [&]() -> PathLossGeometry& {
        if (!cfg.pathloss) cfg.pathloss = PathLossGeometry{10.0, 10.0, 2.4e9};
        return *cfg.pathloss;
    };
    auto as_bool = [&](const std::string& v) {
        if (v == "1" || v == "true" || v == "yes") return true;
        if (v == "0" || v == "false" || v == "no") return false;
        throw ConfigError("boolean expected for '" + key + "', got '" + v + "'");
    };
    try {
        if (key == "scheme") {
            if (value == "mimo") cfg.scheme = Scheme::RisMimo;
            else if (value == "sm") cfg.scheme = Scheme::RisSm;
            else throw ConfigError("scheme must be 'mimo' or 'sm'");
        } else if (key == "tx") cfg.tx = std::stoi(value);
        else if (key == "rx") cfg.rx = std::stoi(value);
        else if (key == "n_ris") cfg.n_ris = std::stoi(value);
        else if (key == "mod_order") cfg.mod_order = std::stoi(value);
        else if (key == "variant") {
            if (value == "verbatim") cfg.variant = PhaseVariant::Verbatim;
            else if (value == "signed") cfg.variant = PhaseVariant::Signed;
            else throw ConfigError("variant must be 'verbatim' or 'signed'");
        } else if (key == "quantize_levels") cfg.quantize_levels = std::stoi(value);
        else if (key == "sigma_e2") cfg.sigma_e2 = std::stod(value);
        else if (key == "d1") ensure_pathloss().d1 = std::stod(value);
        else if (key == "d2") ensure_pathloss().d2 = std::stod(value);
        else if (key == "freq_ghz") ensure_pathloss().frequency = std::stod(value) * 1e9;
        else if (key == "esn0_grid_db") cfg.esn0_grid_db = parse_grid(value);
        else if (key == "max_trials") cfg.max_trials = std::stoll(value);
        else if (key == "min_bit_errors") cfg.min_bit_errors = std::stoll(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "quadrature_order") cfg.quadrature_order = std::stoi(value);
        else if (key == "workers") cfg.workers = std::stoi(value);
        else if (key == "noiseless") cfg.noiseless = as_bool(value);
        else if (key == "normalize_total_power") cfg.normalize_total_power = as_bool(value);
        else if (key == "theory") cfg.theory = as_bool(value);
        else if (key == "simulate") cfg.simulate = as_bool(value);
        else if (key == "out") cfg.out = value;
        else if (key == "gnuplot_out") cfg.gnuplot_out = value;
        else throw ConfigError("unknown config key '" + key + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("invalid value for '" + key + "': '" + value + "'");
    }
}

LinkConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    LinkConfig cfg;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.resize(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace rissim
