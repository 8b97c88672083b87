// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#include "rissim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rissim {

namespace {
constexpr double kSpeedOfLight = 299'792'458.0;
}

double PathLossGeometry::wavelength() const { return kSpeedOfLight / frequency; }

Eigen::MatrixXcd sample_rayleigh(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("sample_rayleigh: dimensions must be positive");
    }
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = rng.cgaussian(1.0);
        }
    }
    return m;
}

ChannelRealization apply_csi_error(const ChannelRealization& chan, double sigma_e2, Rng& rng) {
    if (sigma_e2 < 0.0) {
        throw std::invalid_argument("apply_csi_error: sigma_e2 must be nonnegative");
    }
    ChannelRealization out = chan;
    out.H_est = chan.H;
    out.G_est = chan.G;
    if (sigma_e2 > 0.0) {
        for (Eigen::Index j = 0; j < chan.H.cols(); ++j)
            for (Eigen::Index i = 0; i < chan.H.rows(); ++i)
                (*out.H_est)(i, j) += rng.cgaussian(sigma_e2);
        for (Eigen::Index j = 0; j < chan.G.cols(); ++j)
            for (Eigen::Index i = 0; i < chan.G.rows(); ++i)
                (*out.G_est)(i, j) += rng.cgaussian(sigma_e2);
    }
    return out;
}

Eigen::MatrixXcd compose_channel(const Eigen::MatrixXcd& G, const PhaseConfig& phases,
                                 const Eigen::MatrixXcd& H) {
    const Eigen::Index n = H.rows();
    if (G.rows() != n || phases.size() != n) {
        throw std::invalid_argument("compose_channel: G, H and phases must agree on N");
    }
    Eigen::VectorXcd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        diag(i) = std::polar(1.0, phases.phases[static_cast<std::size_t>(i)]);
    }
    return G.adjoint() * diag.asDiagonal() * H;
}

double inverse_path_loss(const PathLossGeometry& geom) {
    if (geom.d1 <= 0.0 || geom.d2 <= 0.0 || geom.frequency <= 0.0) {
        throw std::invalid_argument("inverse_path_loss: d1, d2 and frequency must be positive");
    }
    const double lambda = geom.wavelength();
    const double lambda2 = lambda * lambda;
    const double denom = 256.0 * std::numbers::pi * std::numbers::pi * geom.d1 * geom.d1 *
                         geom.d2 * geom.d2;
    return lambda2 * lambda2 / denom;
}

double path_loss_amplitude(const PathLossGeometry& geom) {
    return std::sqrt(inverse_path_loss(geom));
}

}  // namespace rissim
