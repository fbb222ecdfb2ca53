#include "order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wavekit {

namespace {

Eigen::VectorXd median3(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    Eigen::VectorXd out = v;
    for (int i = 1; i + 1 < n; ++i) {
        double a = v(i - 1), b = v(i), c = v(i + 1);
        out(i) = std::max(std::min(a, b), std::min(std::max(a, b), c));
    }
    return out;
}

}  // namespace

RhoPattern rho_pattern(const Eigen::VectorXd& rho, double delta, double min_peak_frac) {
    RhoPattern pat;
    const int n = static_cast<int>(rho.size());
    if (n < 3) return pat;
    const Eigen::VectorXd m = median3(rho);
    pat.global_max = m.maxCoeff();

    // strict interior maxima, positive and non-negligible
    std::vector<int> peaks;
    for (int i = 1; i + 1 < n; ++i)
        if (m(i) > 0.0 && m(i) >= min_peak_frac * pat.global_max && m(i) > m(i - 1) &&
            m(i) > m(i + 1))
            peaks.push_back(i);
    if (peaks.size() < 2) return pat;

    // two largest by value, reported in position order
    std::vector<int> byval = peaks;
    std::sort(byval.begin(), byval.end(), [&](int a, int b) { return m(a) > m(b); });
    int first = byval[0], second = byval[1];
    if (first > second) std::swap(first, second);
    pat.first_max = first;
    pat.second_max = second;

    double sep = std::numeric_limits<double>::infinity();
    for (int i = first + 1; i < second; ++i) sep = std::min(sep, m(i));
    pat.separating_min = sep;
    pat.two_maxima = sep <= delta * pat.global_max;
    return pat;
}

int svd_dip_position(const Eigen::VectorXd& s) {
    const int n = static_cast<int>(s.size());
    int best = -1;
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < n; ++k) {
        if (!(s(k) > 0.0) || !(s(k + 1) > 0.0)) continue;
        const double ratio = std::log(s(k) / s(k + 1));
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = k + 1;  // index of the first value after the drop
        }
    }
    return best;
}

OrderScan scan_orders(std::span<const double> window, int p_lo, int p_hi) {
    if (p_lo < 1 || p_hi < p_lo)
        throw std::invalid_argument("scan_orders: bad order range");
    OrderScan scan;
    const int n = static_cast<int>(window.size());
    for (int p = p_lo; p <= p_hi; ++p) {
        OrderCandidate cand;
        cand.p = p;
        cand.cond = std::numeric_limits<double>::infinity();
        if (p + 2 <= n) {
            const auto dm = build_data_matrices_unchecked(window, p);
            auto cp = estimate_correlations(dm);
            cand.singular_values = std::move(cp.singular_values);
            cand.cond = cp.cond;
            if (cp.rho) cand.rho = std::move(*cp.rho);
        }
        scan.candidates.push_back(std::move(cand));
    }
    return scan;
}

OrderSelection select_order(const OrderScan& scan, double delta) {
    if (scan.candidates.empty())
        throw std::invalid_argument("select_order: empty scan");

    int p_min = -1, p_max_aligned = -1, p_max_pattern = -1;
    for (const auto& cand : scan.candidates) {
        if (!cand.rho) continue;
        const RhoPattern pat = rho_pattern(*cand.rho, delta);
        if (!pat.two_maxima) continue;
        if (p_min < 0) p_min = cand.p;
        p_max_pattern = cand.p;
        const int dip = svd_dip_position(cand.singular_values);
        if (dip >= 0 && std::abs(dip - pat.second_max) <= 1) p_max_aligned = cand.p;
    }

    OrderSelection sel;
    if (p_min < 0) {
        sel.p_opt = sel.p_opt_min = sel.p_opt_max = scan.candidates.front().p;
        sel.rationale = "single-maximum profile";
        return sel;
    }
    sel.p_opt_min = p_min;
    sel.p_opt_max = std::max(p_min, p_max_aligned >= 0 ? p_max_aligned : p_max_pattern);
    sel.p_opt = p_min;
    std::ostringstream os;
    os << "two-maxima pattern from p=" << p_min;
    if (p_max_aligned >= 0)
        os << "; svd dip aligned up to p=" << p_max_aligned;
    else
        os << "; no svd alignment, pattern persists to p=" << p_max_pattern;
    sel.rationale = os.str();
    return sel;
}

int refine_window_order(std::span<const double> window, int p_global, int span, double delta) {
    const int n = static_cast<int>(window.size());
    const int lo = std::max(2, p_global - span);
    const int hi = std::max(lo, std::min(p_global + span, (n - 1) / 2));
    const OrderScan scan = scan_orders(window, lo, hi);
    const OrderSelection sel = select_order(scan, delta);
    if (sel.rationale == "single-maximum profile") return std::clamp(p_global, lo, hi);
    return sel.p_opt;
}

}  // namespace wavekit
