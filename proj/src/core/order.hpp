#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corrmat.hpp"

namespace wavekit {

struct OrderCandidate {
    int p = 0;
    std::optional<Eigen::VectorXd> rho;  // absent when inversion failed
    Eigen::VectorXd singular_values;
    double cond = 0.0;
};

struct OrderScan {
    std::vector<OrderCandidate> candidates;
};

struct OrderSelection {
    int p_opt_min = 0;
    int p_opt_max = 0;
    int p_opt = 0;
    std::string rationale;
};

/// Feature positions extracted from one candidate, used by select_order and
/// exposed for tests: the two largest positive interior maxima of the
/// median-smoothed rho function, the minimum between them, and the position
/// of the biggest relative drop of the singular values.
struct RhoPattern {
    bool two_maxima = false;
    int first_max = -1;
    int second_max = -1;
    double separating_min = 0.0;
    double global_max = 0.0;
};

/// min_peak_frac demands that both maxima reach that fraction of the global
/// maximum, so sub-noise wiggles do not qualify as a pattern.
RhoPattern rho_pattern(const Eigen::VectorXd& rho, double delta,
                       double min_peak_frac = 0.1);
int svd_dip_position(const Eigen::VectorXd& singular_values);

/// Evaluates every order in [p_lo, p_hi]; inversion failures and ill-posed
/// orders are recorded, not raised.
OrderScan scan_orders(std::span<const double> window, int p_lo, int p_hi);

/// Minimum order whose rho function shows two positive maxima separated by a
/// value <= delta * max; maximum order keeps the second maximum aligned
/// (within one slot) with the biggest singular-value drop.
OrderSelection select_order(const OrderScan& scan, double delta = 0.05);

/// Per-window second stage: re-select around the whole-record order, clamped
/// to +-span of it. Falls back to p_global when no pattern is found.
int refine_window_order(std::span<const double> window, int p_global, int span,
                        double delta = 0.05);

}  // namespace wavekit
