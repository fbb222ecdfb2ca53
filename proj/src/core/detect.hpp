#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "armodel.hpp"
#include "series.hpp"

namespace wavekit {

struct DetectorConfig {
    std::size_t window_len = 64;  // below 48 the method loses its footing
    std::size_t hop = 8;          // window_len / 8 localizes edges to +-N/16
    int order = 0;                // fixed order when > 0, two-stage auto when 0
    int scan_lo = 4;              // whole-record scan range for auto order
    int scan_hi = 16;
    int order_span = 4;  // per-window clamp around the whole-record order
    double epsilon_frac = 0.2;
    double g_min = 0.0;
    double delta = 0.05;  // "about zero" fraction for the order scan
};

/// Per-window detection statistics. j is the noise-corrected consistency
/// criterion, g the power excess over the estimated noise dispersion,
/// jg their product; j_raw keeps the uncorrected form for diagnostics.
struct WindowStats {
    bool valid = false;
    int p = 0;
    double r0 = 0.0;
    double r1 = 0.0;
    double a1 = 0.0;
    double sigma2_xi = 0.0;
    double j_raw = 0.0;
    double j = 0.0;
    double g = 0.0;
    double jg = 0.0;
    double w00 = 0.0;  // dominant Fisher-augmentation diagonal, diagnostic only
    double cond = 0.0;
};

struct DetectionTrace {
    std::size_t window_len = 0;
    std::size_t hop = 0;
    int global_order = 0;  // whole-record order used to seed per-window refinement
    std::vector<std::size_t> starts;
    std::vector<std::size_t> centers;
    std::vector<WindowStats> stats;

    std::size_t size() const { return centers.size(); }
};

struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive
    double peak_jg = 0.0;
};

struct SegmentSet {
    std::vector<Segment> segments;
    double threshold = 0.0;
};

/// Statistics of one window at a given order. Inversion failure or a
/// non-positive rho pivot yields valid == false rather than an error.
WindowStats window_stats(std::span<const double> window, int p);

/// Moving-window evaluation of J, G, JG over the record.
DetectionTrace run_detector(const TimeSeries& record, const DetectorConfig& cfg);

/// Threshold at epsilon_frac * max(JG), require G > g_min, merge contiguous
/// super-threshold windows into sample intervals. Single absent windows
/// flanked by passing ones are bridged.
SegmentSet segment(const DetectionTrace& trace, const DetectorConfig& cfg);

}  // namespace wavekit
