// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "rissim/rng.hpp"
#include "rissim/transceiver.hpp"

namespace rissim {

// Gaussian model for the composite channel: each entry of C is treated as
// CN(N mu, N), so z = vec(C^H) has mean mu*N*1 and covariance N*I.
struct CompositeStats {
    double mu;
    int n_ris;
    int tx;
    int rx;
};

// Fitted per-entry mean scale, 1.8 / ((1+2Tx)(1+2Rx)).
double mu_formula(int tx, int rx);

CompositeStats stats_from_formula(int tx, int rx, int n_ris);

// Monte Carlo estimate of the per-entry mean of C at N = 1 under verbatim
// phase adaptation. Returns the complex sample mean over all entries and
// trials; if stderr_real is given it receives the standard error of the
// real part.
std::complex<double> estimate_mu(int tx, int rx, long trials, Rng& rng,
                                 double* stderr_real = nullptr);

// One pairwise-error instance: Delta = (x - xhat)(x - xhat)^H, lifted to the
// Tx*Rx-dimensional Hermitian operator I_Rx (x) Delta under column-major
// vec(C^H). The eigendecomposition of the small Delta is cached so the MGF
// only ever works with Tx-sized quantities.
class PepInstance {
  public:
    PepInstance(const Eigen::VectorXcd& x, const Eigen::VectorXcd& xhat);

    const Eigen::MatrixXcd& delta() const { return delta_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    // |u_j^H 1|^2 for each eigenvector u_j of Delta.
    const Eigen::VectorXd& ones_projections() const { return ones_proj_; }

  private:
    Eigen::MatrixXcd delta_;
    Eigen::VectorXd eigenvalues_;
    Eigen::VectorXd ones_proj_;
};

// MGF of z^H B z for z ~ CN(mu*N*1, N*I) and B = I (x) Delta, evaluated in
// the eigenbasis of Delta. Valid for any s <= 0; throws if the resolvent is
// singular.
double mgf_quadratic_form(double s, const CompositeStats& stats, const PepInstance& inst);

struct QuadratureSpec {
    int order = 64;
};

// Unconditional PEP, (1/pi) * int_0^{pi/2} M(-phi / (4 sin^2 theta)) dtheta
// with phi = 1/N0. Rejects quadrature orders below 8.
double pep(const Eigen::VectorXcd& x, const Eigen::VectorXcd& xhat,
           const CompositeStats& stats, double n0, const QuadratureSpec& quad = {});

// Conditional PEP given C: Q(sqrt(Omega / (2 N0))), Omega = ||C(x - xhat)||^2.
double cpep(const Eigen::VectorXcd& x, const Eigen::VectorXcd& xhat,
            const Eigen::MatrixXcd& C, double n0);

// Union bound on the average bit error probability:
// (1 / (kappa 2^kappa)) sum_x sum_{xhat != x} PEP * bit errors. Not clipped;
// may exceed 1 at low SNR.
double abep_bound(const Codebook& book, const CompositeStats& stats, double n0,
                  const QuadratureSpec& quad = {});

// The two routes to Omega; cpep uses the direct norm, the vec/Kronecker form
// exists as the independent check of the quadratic-form identity.
double omega_direct(const Eigen::MatrixXcd& C, const Eigen::VectorXcd& d);
double omega_vec(const Eigen::MatrixXcd& C, const Eigen::VectorXcd& d);

// Gaussian tail Q(t) via the complementary error function.
double q_function(double t);

}  // namespace rissim
