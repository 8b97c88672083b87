// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#include "rissim/transceiver.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rissim {

namespace {

bool is_pow2(int v) { return v >= 1 && std::has_single_bit(static_cast<unsigned>(v)); }

int log2i(int v) { return std::bit_width(static_cast<unsigned>(v)) - 1; }

std::uint32_t gray(std::uint32_t k) { return k ^ (k >> 1); }

}  // namespace

int Constellation::bits() const { return log2i(order); }

Constellation Constellation::psk(int order) {
    if (!is_pow2(order)) {
        throw std::invalid_argument("Constellation::psk: order must be a power of two");
    }
    Constellation c;
    c.order = order;
    c.points.resize(static_cast<std::size_t>(order));
    c.labels.resize(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / order;
        c.points[static_cast<std::size_t>(k)] = std::polar(1.0, angle);
        c.labels[static_cast<std::size_t>(k)] = gray(static_cast<std::uint32_t>(k));
    }
    // Gray-labelled neighbours on the circle differ in one bit by construction.
    return c;
}

Constellation Constellation::qam(int order) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    if (!is_pow2(order) || side * side != order || !is_pow2(side)) {
        throw std::invalid_argument("Constellation::qam: order must be an even power of two");
    }
    Constellation c;
    c.order = order;
    c.points.resize(static_cast<std::size_t>(order));
    c.labels.resize(static_cast<std::size_t>(order));
    const int side_bits = log2i(side);
    // Gray coding per axis; average energy of the 2(side^2-1)/3 grid normalized to 1.
    const double scale = std::sqrt(3.0 / (2.0 * (order - 1)));
    std::size_t idx = 0;
    for (int a = 0; a < side; ++a) {
        for (int b = 0; b < side; ++b) {
            const double re = (2 * a - side + 1) * scale;
            const double im = (2 * b - side + 1) * scale;
            c.points[idx] = {re, im};
            c.labels[idx] = (gray(static_cast<std::uint32_t>(a)) << side_bits) |
                            gray(static_cast<std::uint32_t>(b));
            ++idx;
        }
    }
    return c;
}

Codebook build_codebook(Scheme scheme, int tx, const Constellation& constellation) {
    if (tx < 1) {
        throw std::invalid_argument("build_codebook: Tx must be positive");
    }
    const int m = constellation.order;
    const int sym_bits = constellation.bits();
    Codebook book;
    book.scheme = scheme;
    book.tx = tx;
    book.mod_order = m;

    if (scheme == Scheme::RisMimo) {
        book.bits_per_use = tx * sym_bits;
        std::size_t count = 1;
        for (int j = 0; j < tx; ++j) count *= static_cast<std::size_t>(m);
        book.vectors.reserve(count);
        book.labels.reserve(count);
        for (std::size_t idx = 0; idx < count; ++idx) {
            Eigen::VectorXcd x(tx);
            std::uint32_t label = 0;
            std::size_t rem = idx;
            // antenna 0 is the most significant base-M digit
            for (int j = tx - 1; j >= 0; --j) {
                const std::size_t sym = rem % static_cast<std::size_t>(m);
                rem /= static_cast<std::size_t>(m);
                x(j) = constellation.points[sym];
                label |= constellation.labels[sym] << ((tx - 1 - j) * sym_bits);
            }
            book.vectors.push_back(std::move(x));
            book.labels.push_back(label);
        }
    } else {
        if (!is_pow2(tx)) {
            throw std::invalid_argument("build_codebook: RIS-SM requires power-of-two Tx");
        }
        book.bits_per_use = log2i(tx) + sym_bits;
        book.vectors.reserve(static_cast<std::size_t>(tx) * m);
        book.labels.reserve(static_cast<std::size_t>(tx) * m);
        for (int a = 0; a < tx; ++a) {
            for (int sym = 0; sym < m; ++sym) {
                Eigen::VectorXcd x = Eigen::VectorXcd::Zero(tx);
                x(a) = constellation.points[static_cast<std::size_t>(sym)];
                book.vectors.push_back(std::move(x));
                book.labels.push_back((static_cast<std::uint32_t>(a) << sym_bits) |
                                      constellation.labels[static_cast<std::size_t>(sym)]);
            }
        }
    }
    return book;
}

Codebook build_codebook(Scheme scheme, int tx, int mod_order) {
    return build_codebook(scheme, tx, Constellation::psk(mod_order));
}

Eigen::VectorXcd transmit(const Eigen::VectorXcd& x, const Eigen::MatrixXcd& C,
                          double amplitude, double n0, Rng& rng, bool noiseless) {
    if (C.cols() != x.size()) {
        throw std::invalid_argument("transmit: channel and signal dimensions disagree");
    }
    if (!noiseless && n0 <= 0.0) {
        throw std::invalid_argument("transmit: N0 must be positive");
    }
    Eigen::VectorXcd y = amplitude * (C * x);
    if (!noiseless) {
        for (Eigen::Index r = 0; r < y.size(); ++r) y(r) += rng.cgaussian(n0);
    }
    return y;
}

std::size_t ml_detect(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& C_est,
                      const Codebook& book) {
    if (book.size() == 0) {
        throw std::invalid_argument("ml_detect: empty codebook");
    }
    std::size_t best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < book.size(); ++k) {
        const double metric = (y - C_est * book.vectors[k]).squaredNorm();
        if (metric < best_metric) {
            best_metric = metric;
            best = k;
        }
    }
    return best;
}

int count_bit_errors(std::size_t true_index, std::size_t detected_index, const Codebook& book) {
    if (true_index >= book.size() || detected_index >= book.size()) {
        throw std::invalid_argument("count_bit_errors: index out of range");
    }
    return std::popcount(book.labels[true_index] ^ book.labels[detected_index]);
}

}  // namespace rissim
