#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "corrmat.hpp"

namespace wavekit {

/// Linear-prediction model x_n = -sum_i a(i-1) x_{n-i} + xi_n with
/// innovation dispersion sigma2_xi. `a` holds a_1..a_p.
struct ARModel {
    int p = 0;
    Eigen::VectorXd a;
    double sigma2_xi = 0.0;
    bool valid = false;            // false when rho[p-1] <= 0 (no positive maximum)
    bool ill_conditioned = false;  // symmetric solve fell back to least squares
    bool symmetric = false;
};

/// Linear shift operator defined by the LP coefficients: shifts a state
/// vector up one slot and appends the predicted next value.
struct FrobeniusOperator {
    Eigen::VectorXd coeffs;  // a_1..a_p

    int order() const { return static_cast<int>(coeffs.size()); }
    Eigen::MatrixXd dense() const;
    /// column action K*v
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    /// row action y^T K, returned as a column vector
    Eigen::VectorXd apply_to_row(const Eigen::VectorXd& y) const;
};

/// LP parameters from the last inverse-correlation column:
/// a_i = rho[p-1-i]/rho[p-1] (i < p), a_p = 0, sigma2_xi = 1/rho[p-1].
/// Throws when the pair was not invertible.
ARModel estimate_lp(const CorrelationPair& cp);

/// Constrained estimate with a palindromic characteristic polynomial
/// (a_i = a_{p-i}, a_p = 1), for signals whose roots sit on the unit circle.
/// Only even p is supported.
ARModel estimate_lp_symmetric(const CorrelationPair& cp);

/// Roots of z^p + a_1 z^{p-1} + ... + a_p via the companion eigensolve.
std::vector<std::complex<double>> char_roots(const FrobeniusOperator& op);
std::vector<std::complex<double>> char_roots(const ARModel& model);

}  // namespace wavekit
