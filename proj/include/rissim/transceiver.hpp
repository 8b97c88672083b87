// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rissim/rng.hpp"

namespace rissim {

enum class Scheme { RisMimo, RisSm };

// Unit-average-energy constellation with Gray bit labels.
struct Constellation {
    int order;
    std::vector<std::complex<double>> points;
    std::vector<std::uint32_t> labels;

    int bits() const;

    static Constellation psk(int order);
    static Constellation qam(int order);  // square QAM (4, 16, 64, ...)
};

// Full enumeration of candidate transmit vectors with kappa-bit labels.
// RisMimo: M^Tx vectors, every entry a constellation point. RisSm: Tx*M
// vectors with a single active antenna; the label is the natural-binary
// antenna index followed by the Gray symbol bits.
struct Codebook {
    Scheme scheme;
    int tx;
    int mod_order;
    int bits_per_use;  // kappa
    std::vector<Eigen::VectorXcd> vectors;
    std::vector<std::uint32_t> labels;

    std::size_t size() const { return vectors.size(); }
};

Codebook build_codebook(Scheme scheme, int tx, const Constellation& constellation);
Codebook build_codebook(Scheme scheme, int tx, int mod_order);  // PSK symbols

// y = amplitude * C x + n, n i.i.d. CN(0, n0). With noiseless set, y is the
// exact noise-free signal and the rng is not consumed.
Eigen::VectorXcd transmit(const Eigen::VectorXcd& x, const Eigen::MatrixXcd& C,
                          double amplitude, double n0, Rng& rng, bool noiseless = false);

// Exhaustive ML detection: argmin ||y - C_est x||^2, ties to the lowest index.
std::size_t ml_detect(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& C_est,
                      const Codebook& book);

// Hamming distance between the two codebook labels.
int count_bit_errors(std::size_t true_index, std::size_t detected_index, const Codebook& book);

// One measured or theoretical performance point.
struct BerRecord {
    Scheme scheme;
    int tx;
    int rx;
    int n_ris;
    int mod_order;
    double esn0_db;
    long long trials;
    long long bit_errors;
    double ber;
    std::string source;  // "simulated" | "theory"
    std::uint64_t config_hash = 0;
};

}  // namespace rissim
