#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "series.hpp"

namespace wavekit {

/// Shifted Hankel data matrices of Eq-style linear prediction:
/// s0(i,k) = x[i+k], s1(i,k) = x[i+k+1], both p x (N-p).
struct DataMatrices {
    Eigen::MatrixXd s0;
    Eigen::MatrixXd s1;
    int p = 0;
    std::size_t n = 0;  // window length
};

/// Sample correlation pair and (when the matrix is numerically invertible)
/// its inverse plus the last inverse column rho. `cond` is the spectral
/// condition estimate of rx; inversion is withheld above kCondLimit.
struct CorrelationPair {
    Eigen::MatrixXd rx;
    Eigen::MatrixXd rxp;
    std::optional<Eigen::MatrixXd> rx_inv;
    std::optional<Eigen::VectorXd> rho;  // last column of rx^-1
    Eigen::VectorXd singular_values;     // descending, non-negative
    double cond = 0.0;

    int order() const { return static_cast<int>(rx.rows()); }
    bool invertible() const { return rx_inv.has_value(); }
};

inline constexpr double kCondLimit = 1e12;

/// Requires 2p < N; the scan path uses the unchecked variant to probe
/// ill-posed orders and report the failure as data.
DataMatrices build_data_matrices(std::span<const double> window, int p);
DataMatrices build_data_matrices_unchecked(std::span<const double> window, int p);

/// rx = s0*s0^T/(N-p), rxp = s1*s1^T/(N-p). One global normalization so the
/// noise-dispersion estimate stays in per-sample power units.
CorrelationPair estimate_correlations(const DataMatrices& dm);

/// Averaged main- and first-off-diagonal elements, including the wrap
/// term rx[p-1][0] in the off-diagonal average.
std::pair<double, double> averaged_r0_r1(const CorrelationPair& cp);

/// mean of the k-th superdiagonal of rx, k = 0..p-1 (Toeplitz lag averages)
Eigen::VectorXd lag_averages(const Eigen::MatrixXd& rx);

}  // namespace wavekit
