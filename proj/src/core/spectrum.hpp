#pragma once

#include <vector>

#include "armodel.hpp"
#include "detect.hpp"
#include "series.hpp"

namespace wavekit {

/// Pulse transient response h fitted so that h^T V reproduces the segment,
/// where V is the Hankel matrix of shift-operator trace powers.
struct FormingFilter {
    Eigen::VectorXd h;
    ARModel model;
    double residual = 0.0;  // ||x^T - h^T V|| / ||x||
    bool rank_deficient = false;
};

/// Amplitude spectrum A(f) on a uniform grid over [0, 0.5] cycles/sample.
struct SpectrumEstimate {
    Eigen::VectorXd freqs;
    Eigen::VectorXd amplitude;
    double residual = 0.0;       // forming-filter reconstruction residual
    bool lsq_inverse = false;    // filter operator was rank-deficient
    bool rank_deficient = false;
    int order = 0;
    bool symmetric = false;
};

struct SpectralPeak {
    double freq = 0.0;
    double amplitude = 0.0;
};

struct Spectrogram {
    std::vector<std::size_t> centers;
    std::vector<std::vector<SpectralPeak>> peaks;  // aligned with centers
};

/// v_n = tr(K_p^n) = sum_i z_i^n for n = 0..n_max, via the Newton-identity
/// recursion on the polynomial coefficients (no eigensolve).
Eigen::VectorXd trace_powers(const Eigen::VectorXd& coeffs, int n_max);

/// Least-squares fit of h from x^T = h^T V using a rank-revealing
/// pseudoinverse. sv_threshold <= 0 selects max-dim * eps * s_max.
FormingFilter build_forming_filter(std::span<const double> segment, const ARModel& model,
                                   double sv_threshold = 0.0);

/// A(f) = 2 / |L_p^{-1}(h) e(f)| on `grid_size` frequencies; the factor 2
/// reports single-sided amplitudes of real signals. A singular operator falls
/// back to a least-squares inverse and sets lsq_inverse.
SpectrumEstimate amplitude_spectrum(const FormingFilter& filter, std::size_t grid_size);

/// Fit a high-order model on each detected segment and estimate its spectrum.
/// Segments shorter than 2p are skipped (reported in `skipped`).
std::vector<SpectrumEstimate> localized_analysis(const TimeSeries& record,
                                                 const SegmentSet& segments, int p,
                                                 bool symmetric, std::size_t grid_size,
                                                 std::vector<std::size_t>* skipped = nullptr);

/// Per-window spectra over the whole record; local maxima above peak_frac of
/// the window's strongest amplitude are recorded as peaks.
Spectrogram track_peaks(const TimeSeries& record, const DetectorConfig& cfg, int p,
                        bool symmetric, std::size_t grid_size, double peak_frac = 0.5);

/// Interior local maxima of a spectrum, strongest first.
std::vector<SpectralPeak> spectrum_peaks(const SpectrumEstimate& se, double min_frac = 0.0);

}  // namespace wavekit
