#include "corrmat.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavekit {

DataMatrices build_data_matrices_unchecked(std::span<const double> window, int p) {
    const std::size_t n = window.size();
    if (p < 1 || static_cast<std::size_t>(p) + 1 >= n)
        throw std::invalid_argument("build_data_matrices: order out of range");
    const Eigen::Index cols = static_cast<Eigen::Index>(n) - p;
    DataMatrices dm;
    dm.p = p;
    dm.n = n;
    dm.s0.resize(p, cols);
    dm.s1.resize(p, cols);
    for (int i = 0; i < p; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) {
            dm.s0(i, k) = window[i + k];
            dm.s1(i, k) = window[i + k + 1];
        }
    return dm;
}

DataMatrices build_data_matrices(std::span<const double> window, int p) {
    if (p < 1 || 2 * static_cast<std::size_t>(p) >= window.size())
        throw std::invalid_argument(
            "build_data_matrices: p >= N/2 is ill-posed for correlation estimation");
    return build_data_matrices_unchecked(window, p);
}

CorrelationPair estimate_correlations(const DataMatrices& dm) {
    const double scale = 1.0 / static_cast<double>(dm.s0.cols());
    CorrelationPair cp;
    cp.rx = scale * (dm.s0 * dm.s0.transpose());
    cp.rxp = scale * (dm.s1 * dm.s1.transpose());
    // symmetrize away accumulation asymmetry before factorizing
    cp.rx = 0.5 * (cp.rx + cp.rx.transpose()).eval();
    cp.rxp = 0.5 * (cp.rxp + cp.rxp.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cp.rx);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("estimate_correlations: eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
    const int p = dm.p;
    cp.singular_values.resize(p);
    for (int i = 0; i < p; ++i) cp.singular_values(i) = std::abs(lam(p - 1 - i));

    const double lmax = cp.singular_values(0);
    const double lmin = lam(0);
    if (lmin <= 0.0 || lmax <= 0.0)
        cp.cond = std::numeric_limits<double>::infinity();
    else
        cp.cond = lmax / lmin;

    if (cp.cond < kCondLimit) {
        Eigen::VectorXd inv_lam = lam.cwiseInverse();
        cp.rx_inv = es.eigenvectors() * inv_lam.asDiagonal() * es.eigenvectors().transpose();
        cp.rho = cp.rx_inv->col(p - 1);
    }
    return cp;
}

std::pair<double, double> averaged_r0_r1(const CorrelationPair& cp) {
    const int p = cp.order();
    const double r0 = cp.rx.trace() / p;
    double acc = cp.rx(p - 1, 0);  // wrap term
    for (int i = 0; i + 1 < p; ++i) acc += cp.rx(i, i + 1);
    return {r0, acc / p};
}

Eigen::VectorXd lag_averages(const Eigen::MatrixXd& rx) {
    const int p = static_cast<int>(rx.rows());
    Eigen::VectorXd r(p);
    for (int k = 0; k < p; ++k) {
        double acc = 0.0;
        for (int i = 0; i + k < p; ++i) acc += rx(i, i + k);
        r(k) = acc / (p - k);
    }
    return r;
}

}  // namespace wavekit
