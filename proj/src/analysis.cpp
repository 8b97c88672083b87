// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#include "rissim/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rissim/channel.hpp"
#include "rissim/phase.hpp"
#include "rissim/quadrature.hpp"

namespace rissim {

double mu_formula(int tx, int rx) {
    if (tx < 1 || rx < 1) {
        throw std::invalid_argument("mu_formula: antenna counts must be positive");
    }
    return 1.8 / ((1.0 + 2.0 * tx) * (1.0 + 2.0 * rx));
}

CompositeStats stats_from_formula(int tx, int rx, int n_ris) {
    return {mu_formula(tx, rx), n_ris, tx, rx};
}

std::complex<double> estimate_mu(int tx, int rx, long trials, Rng& rng, double* stderr_real) {
    if (trials < 10'000) {
        throw std::invalid_argument("estimate_mu: at least 1e4 trials required");
    }
    std::complex<double> sum(0.0, 0.0);
    double sum_re2 = 0.0;
    const long samples = trials * tx * rx;
    for (long t = 0; t < trials; ++t) {
        const Eigen::MatrixXcd h = sample_rayleigh(1, tx, rng);
        const Eigen::MatrixXcd g = sample_rayleigh(1, rx, rng);
        const PhaseConfig phases = adapt_phases(h, g, PhaseVariant::Verbatim);
        const Eigen::MatrixXcd c = compose_channel(g, phases, h);
        sum += c.sum();
        sum_re2 += c.real().array().square().sum();
    }
    const std::complex<double> mean = sum / static_cast<double>(samples);
    if (stderr_real != nullptr) {
        const double var = sum_re2 / samples - mean.real() * mean.real();
        *stderr_real = std::sqrt(var / samples);
    }
    return mean;
}

PepInstance::PepInstance(const Eigen::VectorXcd& x, const Eigen::VectorXcd& xhat) {
    if (x.size() != xhat.size()) {
        throw std::invalid_argument("PepInstance: vector sizes disagree");
    }
    const Eigen::VectorXcd d = x - xhat;
    if (d.norm() == 0.0) {
        throw std::invalid_argument("PepInstance: x and xhat must differ");
    }
    delta_ = d * d.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(delta_);
    eigenvalues_ = eig.eigenvalues().cwiseMax(0.0);  // clear rounding negatives
    const Eigen::VectorXcd ones_proj =
        eig.eigenvectors().adjoint() * Eigen::VectorXcd::Ones(d.size());
    ones_proj_ = ones_proj.cwiseAbs2();
}

double mgf_quadratic_form(double s, const CompositeStats& stats, const PepInstance& inst) {
    // det(I - s N B) = prod_j (1 - s N lambda_j)^Rx with lambda_j the
    // eigenvalues of Delta; the exponent reduces to the same eigenbasis.
    const double n = static_cast<double>(stats.n_ris);
    const double mean = stats.mu * n;
    double log_det = 0.0;
    double expo = 0.0;
    for (Eigen::Index j = 0; j < inst.eigenvalues().size(); ++j) {
        const double lam = inst.eigenvalues()(j);
        const double resolvent = 1.0 - s * n * lam;
        if (resolvent <= 0.0) {
            throw std::domain_error("mgf_quadratic_form: singular resolvent");
        }
        log_det += stats.rx * std::log(resolvent);
        expo += lam * inst.ones_projections()(j) / resolvent;
    }
    expo *= s * mean * mean * stats.rx;
    return std::exp(expo - log_det);
}

double pep(const Eigen::VectorXcd& x, const Eigen::VectorXcd& xhat,
           const CompositeStats& stats, double n0, const QuadratureSpec& quad) {
    if (quad.order < 8) {
        throw std::invalid_argument("pep: quadrature order below 8");
    }
    if (n0 <= 0.0) {
        throw std::invalid_argument("pep: N0 must be positive");
    }
    const PepInstance inst(x, xhat);
    const double varphi = 1.0 / n0;
    const double integral = integrate_gl(
        [&](double theta) {
            const double sin2 = std::sin(theta) * std::sin(theta);
            return mgf_quadratic_form(-varphi / (4.0 * sin2), stats, inst);
        },
        0.0, std::numbers::pi / 2.0, quad.order);
    return integral / std::numbers::pi;
}

double cpep(const Eigen::VectorXcd& x, const Eigen::VectorXcd& xhat,
            const Eigen::MatrixXcd& C, double n0) {
    const double omega = omega_direct(C, x - xhat);
    return q_function(std::sqrt(omega / (2.0 * n0)));
}

double abep_bound(const Codebook& book, const CompositeStats& stats, double n0,
                  const QuadratureSpec& quad) {
    if (book.size() < 2) {
        throw std::invalid_argument("abep_bound: codebook needs at least two entries");
    }
    const double kappa = static_cast<double>(book.bits_per_use);
    double sum = 0.0;
    for (std::size_t i = 0; i < book.size(); ++i) {
        for (std::size_t j = 0; j < book.size(); ++j) {
            if (i == j) continue;
            const int errs = count_bit_errors(i, j, book);
            sum += pep(book.vectors[i], book.vectors[j], stats, n0, quad) * errs;
        }
    }
    return sum / (kappa * static_cast<double>(book.size()));
}

double omega_direct(const Eigen::MatrixXcd& C, const Eigen::VectorXcd& d) {
    return (C * d).squaredNorm();
}

double omega_vec(const Eigen::MatrixXcd& C, const Eigen::VectorXcd& d) {
    // z = vec(C^H) stacked column-major, B = I_Rx (x) Delta
    const Eigen::Index tx = C.cols();
    const Eigen::Index rx = C.rows();
    const Eigen::MatrixXcd ch = C.adjoint();
    Eigen::VectorXcd z(tx * rx);
    for (Eigen::Index r = 0; r < rx; ++r) z.segment(r * tx, tx) = ch.col(r);
    const Eigen::MatrixXcd delta = d * d.adjoint();
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(tx * rx, tx * rx);
    for (Eigen::Index r = 0; r < rx; ++r) b.block(r * tx, r * tx, tx, tx) = delta;
    return (z.adjoint() * b * z)(0, 0).real();
}

double q_function(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

}  // namespace rissim
