#include "spectrum.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavekit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Eigen::VectorXd trace_powers(const Eigen::VectorXd& coeffs, int n_max) {
    const int p = static_cast<int>(coeffs.size());
    if (p < 1 || n_max < 0) throw std::invalid_argument("trace_powers: bad arguments");
    Eigen::VectorXd v(n_max + 1);
    v(0) = p;
    for (int n = 1; n <= n_max; ++n) {
        double acc = 0.0;
        if (n <= p) {
            for (int i = 1; i < n; ++i) acc -= coeffs(i - 1) * v(n - i);
            acc -= n * coeffs(n - 1);
        } else {
            for (int i = 1; i <= p; ++i) acc -= coeffs(i - 1) * v(n - i);
        }
        v(n) = acc;
    }
    return v;
}

FormingFilter build_forming_filter(std::span<const double> segment, const ARModel& model,
                                   double sv_threshold) {
    const int p = model.p;
    const int n = static_cast<int>(segment.size());
    if (n <= p) throw std::invalid_argument("build_forming_filter: segment shorter than order");

    const Eigen::VectorXd v = trace_powers(model.a, n - 1);
    const int cols = n - p + 1;
    Eigen::MatrixXd vt(cols, p);  // V^T, so h solves vt * h = x
    for (int k = 0; k < cols; ++k)
        for (int i = 0; i < p; ++i) vt(k, i) = v(i + k);
    Eigen::VectorXd x(cols);
    for (int k = 0; k < cols; ++k) x(k) = segment[k];

    Eigen::BDCSVD<Eigen::MatrixXd> svd(vt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (sv_threshold > 0.0)
        svd.setThreshold(sv_threshold / svd.singularValues()(0));

    FormingFilter ff;
    ff.model = model;
    ff.h = svd.solve(x);
    ff.rank_deficient = svd.rank() < p;
    const double xn = x.norm();
    ff.residual = xn > 0.0 ? (vt * ff.h - x).norm() / xn : 0.0;
    return ff;
}

SpectrumEstimate amplitude_spectrum(const FormingFilter& filter, std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("amplitude_spectrum: grid too small");
    const int p = filter.model.p;
    const FrobeniusOperator op{filter.model.a};

    Eigen::MatrixXd l(p, p);
    Eigen::VectorXd row = filter.h;
    l.row(0) = row.transpose();
    for (int k = 1; k < p; ++k) {
        row = op.apply_to_row(row);
        l.row(k) = row.transpose();
    }

    SpectrumEstimate se;
    se.order = p;
    se.symmetric = filter.model.symmetric;
    se.residual = filter.residual;
    se.rank_deficient = filter.rank_deficient;

    Eigen::MatrixXd linv;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(l);
    if (lu.isInvertible()) {
        linv = lu.inverse();
    } else {
        // rows h^T K^k became dependent; fall back to the pseudoinverse
        se.lsq_inverse = true;
        linv = l.completeOrthogonalDecomposition().pseudoInverse();
    }

    const int g = static_cast<int>(grid_size);
    Eigen::MatrixXd cosines(p, g), sines(p, g);
    se.freqs.resize(g);
    for (int i = 0; i < g; ++i) {
        const double f = 0.5 * static_cast<double>(i) / static_cast<double>(g - 1);
        se.freqs(i) = f;
        for (int k = 0; k < p; ++k) {
            const double ph = kTwoPi * f * k;
            cosines(k, i) = std::cos(ph);
            sines(k, i) = std::sin(ph);
        }
    }
    const Eigen::MatrixXd yc = linv * cosines;
    const Eigen::MatrixXd ys = linv * sines;
    se.amplitude.resize(g);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    for (int i = 0; i < g; ++i) {
        const double norm = scale * std::sqrt(yc.col(i).squaredNorm() + ys.col(i).squaredNorm());
        se.amplitude(i) = 2.0 / norm;
    }
    return se;
}

namespace {

// HOAR model for one fragment; empty when the correlation pair cannot be
// inverted or the pivot is non-positive.
std::optional<ARModel> fit_fragment_model(std::span<const double> fragment, int p,
                                          bool symmetric) {
    const auto dm = build_data_matrices(fragment, p);
    const auto cp = estimate_correlations(dm);
    if (!cp.invertible()) return std::nullopt;
    ARModel m = (symmetric && p % 2 == 0) ? estimate_lp_symmetric(cp) : estimate_lp(cp);
    if (!m.valid) return std::nullopt;
    return m;
}

}  // namespace

std::vector<SpectrumEstimate> localized_analysis(const TimeSeries& record,
                                                 const SegmentSet& segments, int p,
                                                 bool symmetric, std::size_t grid_size,
                                                 std::vector<std::size_t>* skipped) {
    std::vector<SpectrumEstimate> out;
    for (std::size_t idx = 0; idx < segments.segments.size(); ++idx) {
        const auto& seg = segments.segments[idx];
        const std::size_t len = seg.end - seg.start;
        if (seg.end > record.size() || len <= 2 * static_cast<std::size_t>(p)) {
            if (skipped) skipped->push_back(idx);
            continue;
        }
        const auto fragment = record.view(seg.start, len);
        const auto model = fit_fragment_model(fragment, p, symmetric);
        if (!model) {
            if (skipped) skipped->push_back(idx);
            continue;
        }
        const FormingFilter ff = build_forming_filter(fragment, *model);
        out.push_back(amplitude_spectrum(ff, grid_size));
    }
    return out;
}

std::vector<SpectralPeak> spectrum_peaks(const SpectrumEstimate& se, double min_frac) {
    const int g = static_cast<int>(se.amplitude.size());
    const double cutoff = min_frac * se.amplitude.maxCoeff();
    std::vector<SpectralPeak> peaks;
    for (int i = 1; i + 1 < g; ++i) {
        const double a = se.amplitude(i);
        if (a > se.amplitude(i - 1) && a > se.amplitude(i + 1) && a >= cutoff)
            peaks.push_back({se.freqs(i), a});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectralPeak& a, const SpectralPeak& b) { return a.amplitude > b.amplitude; });
    return peaks;
}

Spectrogram track_peaks(const TimeSeries& record, const DetectorConfig& cfg, int p,
                        bool symmetric, std::size_t grid_size, double peak_frac) {
    const std::size_t n = cfg.window_len;
    if (record.size() < n) throw std::invalid_argument("track_peaks: record shorter than window");
    Spectrogram sg;
    for (std::size_t off = 0; off + n <= record.size(); off += cfg.hop) {
        sg.centers.push_back(off + n / 2);
        std::vector<SpectralPeak> peaks;
        const auto window = record.view(off, n);
        const bool zero = std::all_of(window.begin(), window.end(),
                                      [](double v) { return v == 0.0; });
        if (!zero && 2 * static_cast<std::size_t>(p) < n) {
            if (const auto model = fit_fragment_model(window, p, symmetric)) {
                const FormingFilter ff = build_forming_filter(window, *model);
                peaks = spectrum_peaks(amplitude_spectrum(ff, grid_size), peak_frac);
            }
        }
        sg.peaks.push_back(std::move(peaks));
    }
    return sg;
}

}  // namespace wavekit
