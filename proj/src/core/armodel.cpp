#include "armodel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavekit {

Eigen::MatrixXd FrobeniusOperator::dense() const {
    const int p = order();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i + 1 < p; ++i) k(i, i + 1) = 1.0;
    for (int j = 0; j < p; ++j) k(p - 1, j) = -coeffs(p - 1 - j);
    return k;
}

Eigen::VectorXd FrobeniusOperator::apply(const Eigen::VectorXd& v) const {
    const int p = order();
    Eigen::VectorXd out(p);
    for (int i = 0; i + 1 < p; ++i) out(i) = v(i + 1);
    double acc = 0.0;
    for (int i = 1; i <= p; ++i) acc -= coeffs(i - 1) * v(p - i);
    out(p - 1) = acc;
    return out;
}

Eigen::VectorXd FrobeniusOperator::apply_to_row(const Eigen::VectorXd& y) const {
    const int p = order();
    Eigen::VectorXd out(p);
    const double tail = y(p - 1);
    out(0) = -coeffs(p - 1) * tail;
    for (int j = 1; j < p; ++j) out(j) = y(j - 1) - coeffs(p - 1 - j) * tail;
    return out;
}

ARModel estimate_lp(const CorrelationPair& cp) {
    if (!cp.rho)
        throw std::invalid_argument("estimate_lp: correlation matrix was not invertible");
    const int p = cp.order();
    const Eigen::VectorXd& rho = *cp.rho;
    const double pivot = rho(p - 1);
    ARModel m;
    m.p = p;
    m.a = Eigen::VectorXd::Zero(p);
    if (pivot == 0.0) {
        m.sigma2_xi = std::numeric_limits<double>::infinity();
        m.valid = false;
        return m;
    }
    for (int i = 1; i <= p - 1; ++i) m.a(i - 1) = rho(p - 1 - i) / pivot;
    m.sigma2_xi = 1.0 / pivot;
    m.valid = pivot > 0.0;
    return m;
}

ARModel estimate_lp_symmetric(const CorrelationPair& cp) {
    const int p = cp.order();
    if (p % 2 != 0 || p < 2)
        throw std::invalid_argument("estimate_lp_symmetric: order must be even");
    if (!cp.rho)
        throw std::invalid_argument("estimate_lp_symmetric: correlation matrix was not invertible");
    const Eigen::MatrixXd& r = cp.rx;
    const Eigen::VectorXd& rho = *cp.rho;
    const double pivot = rho(p - 1);
    if (pivot == 0.0)
        throw std::runtime_error("estimate_lp_symmetric: zero rho pivot");

    // u_m = sum_{i=0}^{p-2} r(m, i+1) * rho(i)
    Eigen::VectorXd shifted = Eigen::VectorXd::Zero(p);
    shifted.tail(p - 1) = rho.head(p - 1);
    const Eigen::VectorXd u = r * shifted;

    // Stationarity of the shift-symmetry likelihood restricted to palindromic
    // coefficient vectors. Index m pairs with p-m; the center q = p/2 stands
    // alone.
    const int q = p / 2;
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(q, q);
    Eigen::VectorXd bvec(q);
    for (int k = 1; k < q; ++k) {
        for (int i = 1; i < q; ++i)
            sys(k - 1, i - 1) = r(k, i) + r(k, p - i) + r(p - k, i) + r(p - k, p - i);
        sys(k - 1, q - 1) = r(k, q) + r(p - k, q);
        bvec(k - 1) = (u(k) + u(p - k)) / pivot - r(k, 0) - r(p - k, 0);
    }
    for (int i = 1; i < q; ++i) sys(q - 1, i - 1) = r(q, i) + r(q, p - i);
    sys(q - 1, q - 1) = r(q, q);
    bvec(q - 1) = u(q) / pivot - r(q, 0);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(q - 1);
    const bool ill = !(smin > 0.0) || smax / smin > 1e10;
    const Eigen::VectorXd t = svd.solve(bvec);

    ARModel m;
    m.p = p;
    m.symmetric = true;
    m.ill_conditioned = ill;
    m.a = Eigen::VectorXd::Zero(p);
    for (int i = 1; i <= q; ++i) m.a(i - 1) = t(i - 1);
    for (int i = 1; i < q; ++i) m.a(p - i - 1) = t(i - 1);
    m.a(p - 1) = 1.0;
    m.sigma2_xi = 1.0 / pivot;
    m.valid = pivot > 0.0;
    return m;
}

std::vector<std::complex<double>> char_roots(const FrobeniusOperator& op) {
    const int p = op.order();
    Eigen::EigenSolver<Eigen::MatrixXd> es(op.dense());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("char_roots: eigensolve failed");
    std::vector<std::complex<double>> roots(p);
    for (int i = 0; i < p; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

std::vector<std::complex<double>> char_roots(const ARModel& model) {
    return char_roots(FrobeniusOperator{model.a});
}

}  // namespace wavekit
