#include "detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "order.hpp"

namespace wavekit {

namespace {

// w_{0,0} of the Fisher augmentation, evaluated on the Toeplitz lag averages.
// Needs lag 2, so p >= 3.
double w00_diagnostic(const Eigen::VectorXd& a, const Eigen::VectorXd& r) {
    const int p = static_cast<int>(a.size());
    if (p < 3) return std::numeric_limits<double>::quiet_NaN();
    const double a1 = a(0);
    double s1 = 0.0;  // sum_i a_i r_{i-1}
    for (int i = 1; i <= p; ++i) s1 += a(i - 1) * r(i - 1);
    double s2 = 0.0;  // sum_{l,m} a_l a_m r_{|l-m|}
    for (int l = 1; l <= p; ++l)
        for (int m = 1; m <= p; ++m) s2 += a(l - 1) * a(m - 1) * r(std::abs(l - m));
    double s3 = 0.0;  // sum_{i>=2} a_i r_{i-2}
    for (int i = 2; i <= p; ++i) s3 += a(i - 1) * r(i - 2);
    return a1 * a1 * r(0) + 4.0 * a1 * s1 + s2 - 2.0 * s3 - 2.0 * r(2);
}

}  // namespace

WindowStats window_stats(std::span<const double> window, int p) {
    WindowStats ws;
    ws.p = p;
    const auto dm = build_data_matrices(window, p);
    const auto cp = estimate_correlations(dm);
    ws.cond = cp.cond;
    const auto [r0, r1] = averaged_r0_r1(cp);
    ws.r0 = r0;
    ws.r1 = r1;
    if (!cp.invertible()) return ws;  // stats absent, not fabricated

    const ARModel model = estimate_lp(cp);
    if (!model.valid) return ws;

    ws.valid = true;
    ws.a1 = model.a(0);
    ws.sigma2_xi = model.sigma2_xi;
    const double one_a1 = 1.0 + ws.a1 * ws.a1;
    ws.j_raw = r0 * one_a1 - 2.0 * r1 * ws.a1;
    ws.g = r0 - ws.sigma2_xi;
    ws.j = ws.g * one_a1 - 2.0 * r1 * ws.a1;
    ws.jg = ws.j * ws.g;
    ws.w00 = w00_diagnostic(model.a, lag_averages(cp.rx));
    return ws;
}

DetectionTrace run_detector(const TimeSeries& record, const DetectorConfig& cfg) {
    const std::size_t n = cfg.window_len;
    if (cfg.hop < 1) throw std::invalid_argument("run_detector: hop must be >= 1");
    if (record.size() < n) throw std::invalid_argument("run_detector: record shorter than window");

    DetectionTrace trace;
    trace.window_len = n;
    trace.hop = cfg.hop;

    int p_global = cfg.order;
    if (cfg.order <= 0) {
        const OrderScan scan = scan_orders(record.view(), cfg.scan_lo, cfg.scan_hi);
        p_global = select_order(scan, cfg.delta).p_opt;
    }
    trace.global_order = p_global;

    for (std::size_t off = 0; off + n <= record.size(); off += cfg.hop) {
        const auto window = record.view(off, n);
        int p = p_global;
        if (cfg.order <= 0) p = refine_window_order(window, p_global, cfg.order_span, cfg.delta);
        p = std::min<int>(p, static_cast<int>(n) / 2 - 1);
        p = std::max(p, 2);

        WindowStats ws;
        bool degenerate = std::all_of(window.begin(), window.end(),
                                      [](double v) { return v == 0.0; });
        if (!degenerate) {
            ws = window_stats(window, p);
        } else {
            ws.p = p;
        }
        trace.starts.push_back(off);
        trace.centers.push_back(off + n / 2);
        trace.stats.push_back(ws);
    }
    return trace;
}

SegmentSet segment(const DetectionTrace& trace, const DetectorConfig& cfg) {
    if (trace.size() == 0) throw std::invalid_argument("segment: empty trace");

    double max_jg = -std::numeric_limits<double>::infinity();
    for (const auto& ws : trace.stats)
        if (ws.valid) max_jg = std::max(max_jg, ws.jg);

    SegmentSet out;
    if (!(max_jg > 0.0)) return out;
    out.threshold = cfg.epsilon_frac * max_jg;

    const std::size_t count = trace.size();
    std::vector<char> pass(count, 0);
    for (std::size_t k = 0; k < count; ++k) {
        const auto& ws = trace.stats[k];
        pass[k] = ws.valid && ws.jg >= out.threshold && ws.g > cfg.g_min;
    }
    // bridge single invalid windows flanked by passing neighbours
    for (std::size_t k = 1; k + 1 < count; ++k)
        if (!trace.stats[k].valid && pass[k - 1] && pass[k + 1]) pass[k] = 1;

    std::size_t k = 0;
    while (k < count) {
        if (!pass[k]) {
            ++k;
            continue;
        }
        std::size_t run_end = k;
        double peak = -std::numeric_limits<double>::infinity();
        while (run_end < count && pass[run_end]) {
            if (trace.stats[run_end].valid)
                peak = std::max(peak, trace.stats[run_end].jg);
            ++run_end;
        }
        Segment seg;
        seg.start = trace.starts[k];
        seg.end = trace.starts[run_end - 1] + trace.window_len;
        seg.peak_jg = peak;
        out.segments.push_back(seg);
        k = run_end;
    }
    return out;
}

}  // namespace wavekit
