// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#include "rissim/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rissim {

namespace {

// arccos of the normalized real inner product, plus the sign of the
// imaginary part (zero treated as +1). norms are assumed nonzero.
std::pair<double, int> angle_and_sign(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v,
                                      double norm_u, double norm_v) {
    std::complex<double> dot(0.0, 0.0);
    for (Eigen::Index l = 0; l < u.size(); ++l) dot += u(l) * std::conj(v(l));
    const double c = std::clamp(dot.real() / (norm_u * norm_v), -1.0, 1.0);
    const int sign = dot.imag() < 0.0 ? -1 : 1;
    return {std::acos(c), sign};
}

// tile height for the row-blocked sweeps below: accumulators for one tile
// stay L1-resident while the matrix columns stream through
constexpr Eigen::Index kRowTile = 256;

// per-row inner products of rows [row0, row0+rows) with their entrywise
// modulus, swept column-by-column to stay sequential in Eigen's
// column-major storage; the modulus vector has the same norm as the row, so
// the later cosine denominator collapses to the squared row norm.
void modulus_products(const Eigen::MatrixXcd& m, bool conjugate, Eigen::Index row0,
                      Eigen::Index rows, double* norm2, std::complex<double>* dot) {
    std::fill(norm2, norm2 + rows, 0.0);
    std::fill(dot, dot + rows, std::complex<double>(0.0, 0.0));
    for (Eigen::Index l = 0; l < m.cols(); ++l) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const std::complex<double> x =
                conjugate ? std::conj(m(row0 + i, l)) : m(row0 + i, l);
            const double a = std::abs(x);
            norm2[i] += a * a;
            dot[i] += x * a;
        }
    }
}

std::pair<double, int> angle_from(double norm2, const std::complex<double>& dot) {
    if (norm2 == 0.0) return {0.0, 1};
    const double c = std::clamp(dot.real() / norm2, -1.0, 1.0);
    return {std::acos(c), dot.imag() < 0.0 ? -1 : 1};
}

}  // namespace

double QuantizerSpec::delta() const { return std::numbers::pi / levels; }

double QuantizerSpec::nearest_level(double angle) const {
    const double d = delta();
    // round half down, then clamp into the level set
    long k = static_cast<long>(std::ceil(angle / d - 0.5));
    k = std::clamp(k, 0L, static_cast<long>(levels) - 1);
    return static_cast<double>(k) * d;
}

double cosine_similarity_angle(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) {
        throw std::invalid_argument("cosine_similarity_angle: zero-norm input");
    }
    return angle_and_sign(u, v, nu, nv).first;
}

PhaseConfig adapt_phases(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& G,
                         PhaseVariant variant) {
    const Eigen::Index n = H.rows();
    if (G.rows() != n) {
        throw std::invalid_argument("adapt_phases: H and G must have the same row count");
    }
    PhaseConfig cfg;
    cfg.variant = variant;
    cfg.phases.resize(static_cast<std::size_t>(n));
    cfg.component_angles.resize(static_cast<std::size_t>(n));
    if (variant == PhaseVariant::Signed) {
        cfg.component_signs.resize(static_cast<std::size_t>(n));
    }

    double nh2[kRowTile], ng2[kRowTile];
    std::complex<double> dh[kRowTile], dg[kRowTile];
    for (Eigen::Index t0 = 0; t0 < n; t0 += kRowTile) {
        const Eigen::Index rows = std::min(kRowTile, n - t0);
        modulus_products(H, false, t0, rows, nh2, dh);
        // g_i^H is the i-th column of G^H, i.e. the conjugated i-th row of G.
        modulus_products(G, true, t0, rows, ng2, dg);

        for (Eigen::Index i = 0; i < rows; ++i) {
            const auto [phi_h, s_h] = angle_from(nh2[i], dh[i]);
            const auto [phi_g, s_g] = angle_from(ng2[i], dg[i]);

            const std::size_t k = static_cast<std::size_t>(t0 + i);
            cfg.component_angles[k] = {phi_h, phi_g};
            if (variant == PhaseVariant::Verbatim) {
                cfg.phases[k] = -(phi_h + phi_g);
            } else {
                cfg.component_signs[k] = {s_h, s_g};
                cfg.phases[k] = -(s_h * phi_h + s_g * phi_g);
            }
        }
    }
    return cfg;
}

PhaseConfig quantize_phases(const PhaseConfig& cfg, const QuantizerSpec& spec) {
    if (cfg.component_angles.size() != cfg.phases.size()) {
        throw std::invalid_argument("quantize_phases: configuration lacks component angles");
    }
    if (spec.levels < 1) {
        throw std::invalid_argument("quantize_phases: level count must be positive");
    }
    PhaseConfig out = cfg;
    out.quant_levels = spec.levels;
    for (std::size_t i = 0; i < cfg.phases.size(); ++i) {
        const double qh = spec.nearest_level(cfg.component_angles[i].first);
        const double qg = spec.nearest_level(cfg.component_angles[i].second);
        out.component_angles[i] = {qh, qg};
        if (cfg.variant == PhaseVariant::Signed && !cfg.component_signs.empty()) {
            const auto [sh, sg] = cfg.component_signs[i];
            out.phases[i] = -(sh * qh + sg * qg);
        } else {
            out.phases[i] = -(qh + qg);
        }
    }
    return out;
}

GainBound gain_upper_bound(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& G) {
    const Eigen::Index n = H.rows();
    if (G.rows() != n) {
        throw std::invalid_argument("gain_upper_bound: H and G must have the same row count");
    }
    GainBound bound;
    bound.total = 0.0;
    bound.per_entry = Eigen::MatrixXd::Zero(G.cols(), H.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        bound.total += G.row(i).norm() * H.row(i).norm();
        bound.per_entry += G.row(i).cwiseAbs().transpose() * H.row(i).cwiseAbs();
    }
    return bound;
}

PhaseConfig baseline_phases(BaselineKind kind, int n, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("baseline_phases: N must be positive");
    }
    PhaseConfig cfg;
    cfg.phases.resize(static_cast<std::size_t>(n), 0.0);
    if (kind == BaselineKind::Random) {
        for (auto& p : cfg.phases) p = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return cfg;
}

}  // namespace rissim
