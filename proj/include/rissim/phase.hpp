// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "rissim/rng.hpp"

namespace rissim {

enum class PhaseVariant { Verbatim, Signed };

// One phase configuration for an N-element surface. The per-reflector
// component angles (phi_h, phi_g), each in [0, pi], are kept so that
// discrete quantization can act on them after the fact. For the Signed
// variant the per-component signs are kept as well.
struct PhaseConfig {
    std::vector<double> phases;  // length N, radians
    std::vector<std::pair<double, double>> component_angles;
    std::vector<std::pair<int, int>> component_signs;  // empty for Verbatim
    PhaseVariant variant = PhaseVariant::Verbatim;
    std::optional<int> quant_levels;

    int size() const { return static_cast<int>(phases.size()); }
};

// Uniform L-level grid {0, d, ..., (L-1)d} on [0, pi), d = pi/L.
struct QuantizerSpec {
    int levels;
    double delta() const;
    double nearest_level(double angle) const;  // ties round to the lower level
};

// Angle between a complex vector and a reference, from the real part of the
// inner product <u,v> = sum u_l conj(v_l). Result in [0, pi]; the cosine is
// clamped to [-1, 1]. Throws std::invalid_argument on a zero-norm input.
double cosine_similarity_angle(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

// Per-reflector phase adaptation: phi_h aligns row i of H with its entrywise
// modulus, phi_g does the same for column i of G^H, and phi_i = -(phi_h +
// phi_g) (Verbatim) or -(s_h phi_h + s_g phi_g) with s = sign of the
// imaginary part of the inner product (Signed). An all-zero row or column
// contributes angle 0. Cost is linear in N*(Tx+Rx).
PhaseConfig adapt_phases(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& G,
                         PhaseVariant variant = PhaseVariant::Verbatim);

// Rounds each component angle to the nearest quantizer level and recomposes
// the overall shifts. Requires component angles to be present.
PhaseConfig quantize_phases(const PhaseConfig& cfg, const QuantizerSpec& spec);

struct GainBound {
    double total;               // sum_i ||g_i^H|| * ||h_i||
    Eigen::MatrixXd per_entry;  // Rx x Tx, sum_i |g_ki| |h_il|
};

GainBound gain_upper_bound(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& G);

enum class BaselineKind { Identity, Random };

// Reference configurations: all-zero phases, or i.i.d. uniform on [-pi, pi].
PhaseConfig baseline_phases(BaselineKind kind, int n, Rng& rng);

}  // namespace rissim
