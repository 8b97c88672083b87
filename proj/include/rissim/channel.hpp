// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#pragma once

#include <Eigen/Dense>
#include <optional>

#include "rissim/phase.hpp"
#include "rissim/rng.hpp"

namespace rissim {

// Fading state for one coherence block: H is N x Tx (transmitter -> surface),
// G is N x Rx (surface -> receiver). Noisy estimates, when present, have the
// same shapes.
struct ChannelRealization {
    Eigen::MatrixXcd H;
    Eigen::MatrixXcd G;
    std::optional<Eigen::MatrixXcd> H_est;
    std::optional<Eigen::MatrixXcd> G_est;
};

struct PathLossGeometry {
    double d1;         // meters, transmitter -> surface
    double d2;         // meters, surface -> receiver
    double frequency;  // Hz

    double wavelength() const;  // c0 / frequency
};

// i.i.d. CN(0,1) entries (real and imaginary parts each variance 1/2).
Eigen::MatrixXcd sample_rayleigh(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Adds estimates H_est = H + E_t, G_est = G + E_r with i.i.d. CN(0, sigma_e2)
// perturbations; the true matrices are left untouched.
ChannelRealization apply_csi_error(const ChannelRealization& chan, double sigma_e2, Rng& rng);

// Composite channel C = G^H Phi H, shape Rx x Tx, Phi = diag(e^{j phi_i}).
Eigen::MatrixXcd compose_channel(const Eigen::MatrixXcd& G, const PhaseConfig& phases,
                                 const Eigen::MatrixXcd& H);

// 1/P_L = lambda^4 / (256 pi^2 d1^2 d2^2).
double inverse_path_loss(const PathLossGeometry& geom);

// sqrt(1/P_L); the harness scales the noiseless received signal by this.
double path_loss_amplitude(const PathLossGeometry& geom);

}  // namespace rissim
