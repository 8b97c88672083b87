// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "rissim/channel.hpp"
#include "rissim/phase.hpp"
#include "rissim/transceiver.hpp"

using namespace rissim;
using cd = std::complex<double>;

TEST_CASE("constellations have unit average energy and Gray adjacency") {
    for (int m : {2, 4, 8, 16}) {
        const auto c = Constellation::psk(m);
        double energy = 0.0;
        for (const auto& p : c.points) energy += std::norm(p);
        CHECK(energy / m == doctest::Approx(1.0).epsilon(1e-12));
        for (int k = 0; k < m; ++k) {
            const auto diff = c.labels[k] ^ c.labels[(k + 1) % m];
            CHECK(std::popcount(diff) == 1);
        }
    }
    for (int m : {4, 16, 64}) {
        const auto c = Constellation::qam(m);
        double energy = 0.0;
        for (const auto& p : c.points) energy += std::norm(p);
        CHECK(energy / m == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("SM codebook for Tx=2, BPSK") {
    const auto book = build_codebook(Scheme::RisSm, 2, 2);
    REQUIRE(book.size() == 4);
    CHECK(book.bits_per_use == 2);
    CHECK(book.vectors[0](0) == cd(1.0, 0.0));
    CHECK(book.vectors[0](1) == cd(0.0, 0.0));
    CHECK(std::abs(book.vectors[1](0) - cd(-1.0, 0.0)) < 1e-15);
    CHECK(book.vectors[2](0) == cd(0.0, 0.0));
    CHECK(book.vectors[2](1) == cd(1.0, 0.0));
    CHECK(std::abs(book.vectors[3](1) - cd(-1.0, 0.0)) < 1e-15);
    // [+1,0] vs [0,-1]: antenna bit and symbol bit both flip
    CHECK(count_bit_errors(0, 3, book) == 2);
    // every SM vector has unit energy
    for (const auto& v : book.vectors) CHECK(v.squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("MIMO codebooks") {
    const auto siso = build_codebook(Scheme::RisMimo, 1, 2);
    REQUIRE(siso.size() == 2);
    CHECK(siso.bits_per_use == 1);
    CHECK(siso.vectors[0](0) == cd(1.0, 0.0));
    CHECK(std::abs(siso.vectors[1](0) - cd(-1.0, 0.0)) < 1e-15);

    const auto qpsk2 = build_codebook(Scheme::RisMimo, 2, 4);
    CHECK(qpsk2.size() == 16);
    CHECK(qpsk2.bits_per_use == 4);
    double total = 0.0;
    for (const auto& v : qpsk2.vectors) total += v.squaredNorm();
    CHECK(total / qpsk2.size() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("SM rejects non-power-of-two Tx") {
    CHECK_THROWS_AS(build_codebook(Scheme::RisSm, 3, 2), std::invalid_argument);
}

TEST_CASE("transmit noiseless and noise variance") {
    Rng rng(3);
    Eigen::VectorXcd x(2);
    x << 1.0, -1.0;
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
    const auto y = transmit(x, eye, 1.0, 1.0, rng, true);
    CHECK(y(0) == cd(1.0, 0.0));
    CHECK(y(1) == cd(-1.0, 0.0));

    const double n0 = 0.37;
    double acc = 0.0;
    const long draws = 100000;
    for (long t = 0; t < draws; ++t) {
        const auto yn = transmit(x, eye, 1.0, n0, rng);
        acc += std::norm(yn(0) - x(0));
    }
    CHECK(acc / draws == doctest::Approx(n0).epsilon(0.03));
}

TEST_CASE("transmit dimension mismatch") {
    Rng rng(1);
    Eigen::VectorXcd x(3);
    x.setOnes();
    CHECK_THROWS_AS(transmit(x, Eigen::MatrixXcd::Identity(2, 2), 1.0, 1.0, rng),
                    std::invalid_argument);
}

TEST_CASE("ml_detect noiseless roundtrip and tie-break") {
    Rng rng(5);
    const auto book = build_codebook(Scheme::RisMimo, 2, 2);
    const auto h = sample_rayleigh(8, 2, rng);
    const auto g = sample_rayleigh(8, 2, rng);
    const auto c = compose_channel(g, adapt_phases(h, g), h);
    for (std::size_t k = 0; k < book.size(); ++k) {
        const auto y = transmit(book.vectors[k], c, 1.0, 1.0, rng, true);
        CHECK(ml_detect(y, c, book) == k);
    }
    // all-zero channel: every candidate ties, lowest index wins
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::VectorXcd y(2);
    y << 1.0, 1.0;
    CHECK(ml_detect(y, zero, book) == 0);
}

TEST_CASE("ml_detect scaling invariance") {
    Rng rng(7);
    const auto book = build_codebook(Scheme::RisSm, 4, 4);
    const auto h = sample_rayleigh(8, 4, rng);
    const auto g = sample_rayleigh(8, 3, rng);
    const auto c = compose_channel(g, adapt_phases(h, g), h);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t k = rng.uniform_below(book.size());
        const auto y = transmit(book.vectors[k], c, 1.0, 0.5, rng);
        const auto idx = ml_detect(y, c, book);
        CHECK(ml_detect(3.0 * y, 3.0 * c, book) == idx);
    }
}

TEST_CASE("noiseless detection recovers every index on random channels") {
    Rng rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const auto book = build_codebook(Scheme::RisMimo, 2, 2);
        const auto h = sample_rayleigh(4, 2, rng);
        const auto g = sample_rayleigh(4, 2, rng);
        const auto c = compose_channel(g, adapt_phases(h, g), h);
        for (std::size_t k = 0; k < book.size(); ++k) {
            const auto y = transmit(book.vectors[k], c, 1.0, 1.0, rng, true);
            CHECK(ml_detect(y, c, book) == k);
        }
    }
}

TEST_CASE("count_bit_errors") {
    const auto book = build_codebook(Scheme::RisMimo, 2, 4);  // kappa = 4
    CHECK(count_bit_errors(3, 3, book) == 0);
    // complementary labels differ in all kappa bits
    for (std::size_t i = 0; i < book.size(); ++i) {
        for (std::size_t j = 0; j < book.size(); ++j) {
            if (book.labels[i] == (book.labels[j] ^ 0xFu)) {
                CHECK(count_bit_errors(i, j, book) == 4);
            }
        }
    }
}

TEST_CASE("2x2 BPSK at 20 dB with N=16 is nearly error free") {
    Rng rng(13);
    const auto book = build_codebook(Scheme::RisMimo, 2, 2);
    const double n0 = std::pow(10.0, -2.0);
    long vec_errors = 0;
    const long trials = 20000;
    for (long t = 0; t < trials; ++t) {
        const auto h = sample_rayleigh(16, 2, rng);
        const auto g = sample_rayleigh(16, 2, rng);
        const auto c = compose_channel(g, adapt_phases(h, g), h);
        const std::size_t k = rng.uniform_below(book.size());
        const auto y = transmit(book.vectors[k], c, 1.0, n0, rng);
        if (ml_detect(y, c, book) != k) ++vec_errors;
    }
    CHECK(static_cast<double>(vec_errors) / trials < 1e-2);
}
