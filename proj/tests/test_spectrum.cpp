#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "armodel.hpp"
#include "corrmat.hpp"
#include "rng.hpp"
#include "signals.hpp"
#include "spectrum.hpp"

using namespace wavekit;

namespace {

// power sums through the companion eigensolve, the oracle route
Eigen::VectorXd eigen_power_sums(const Eigen::VectorXd& a, int n_max) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(FrobeniusOperator{a}.dense());
    Eigen::VectorXd v(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < a.size(); ++i) acc += std::pow(es.eigenvalues()(i), n);
        v(n) = acc.real();
    }
    return v;
}

Eigen::VectorXd random_stable_coeffs(int pairs, CounterRng& rng) {
    std::vector<std::complex<double>> c = {1.0};
    for (int i = 0; i < pairs; ++i) {
        const double r = 0.3 + 0.6 * rng.uniform();
        const double th = M_PI * rng.uniform();
        for (const auto& z : {std::polar(r, th), std::polar(r, -th)}) {
            std::vector<std::complex<double>> next(c.size() + 1, 0.0);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k] += c[k];
                next[k + 1] -= c[k] * z;
            }
            c = next;
        }
    }
    Eigen::VectorXd a(2 * pairs);
    for (int i = 0; i < 2 * pairs; ++i) a(i) = c[i + 1].real();
    return a;
}

ARModel symmetric_model_for(const TimeSeries& x, int p) {
    return estimate_lp_symmetric(estimate_correlations(build_data_matrices(x.view(), p)));
}

}  // namespace

TEST_CASE("trace_powers: v_0 = p and v_1 = -a_1") {
    Eigen::VectorXd a(4);
    a << 0.5, -0.2, 0.1, 0.3;
    const Eigen::VectorXd v = trace_powers(a, 1);
    CHECK(v(0) == doctest::Approx(4.0));
    CHECK(v(1) == doctest::Approx(-0.5));
}

TEST_CASE("trace_powers: matches the eigenvalue power-sum oracle") {
    CounterRng rng(2, 5);
    for (int trial = 0; trial < 6; ++trial) {
        const Eigen::VectorXd a = random_stable_coeffs(3, rng);
        const int p = static_cast<int>(a.size());
        const Eigen::VectorXd ours = trace_powers(a, 2 * p);
        const Eigen::VectorXd oracle = eigen_power_sums(a, 2 * p);
        for (int n = 0; n <= 2 * p; ++n)
            CHECK(ours(n) == doctest::Approx(oracle(n)).epsilon(1e-8));
    }
}

TEST_CASE("trace_powers: Newton identity residual vanishes for n <= p") {
    CounterRng rng(8, 5);
    const Eigen::VectorXd a = random_stable_coeffs(4, rng);
    const int p = static_cast<int>(a.size());
    const Eigen::VectorXd v = trace_powers(a, p);
    for (int n = 1; n <= p; ++n) {
        double resid = v(n) + n * a(n - 1);
        for (int i = 1; i < n; ++i) resid += a(i - 1) * v(n - i);
        CHECK(std::abs(resid) <= 1e-9 * (1.0 + std::abs(v(n))));
    }
}

TEST_CASE("build_forming_filter: exactly representable segment has tiny residual") {
    // segment = the trace-power sequence itself (unit amplitude per root)
    CounterRng rng(5, 5);
    const Eigen::VectorXd a = random_stable_coeffs(3, rng);
    ARModel m;
    m.p = static_cast<int>(a.size());
    m.a = a;
    m.valid = true;
    const Eigen::VectorXd v = trace_powers(a, 63);
    TimeSeries seg(64);
    for (int i = 0; i < 64; ++i) seg[i] = v(i);
    const FormingFilter ff = build_forming_filter(seg.view(), m);
    CHECK(ff.residual <= 1e-6);
    // h^T V recomputed reproduces the reported residual
    const int p = m.p;
    const int cols = 64 - p + 1;
    double err = 0.0, norm = 0.0;
    for (int k = 0; k < cols; ++k) {
        double acc = 0.0;
        for (int i = 0; i < p; ++i) acc += ff.h(i) * v(i + k);
        err += (acc - seg[k]) * (acc - seg[k]);
        norm += seg[k] * seg[k];
    }
    CHECK(std::sqrt(err / norm) == doctest::Approx(ff.residual).epsilon(1e-6));
}

TEST_CASE("build_forming_filter: three clean sinusoids captured by a p=6 symmetric model") {
    // window spans whole periods of every tone so the correlation estimate
    // carries no leakage
    TimeSeries x(306);
    for (std::size_t n = 0; n < x.size(); ++n)
        x[n] = std::cos(2.0 * M_PI * 0.10 * double(n)) +
               0.6 * std::cos(2.0 * M_PI * 0.23 * double(n) + 1.0) +
               0.3 * std::cos(2.0 * M_PI * 0.41 * double(n) + 2.2);
    const ARModel m = symmetric_model_for(x, 6);
    const FormingFilter ff = build_forming_filter(x.view(), m);
    // energy of the reconstruction error within the fitted span
    CHECK(ff.residual * ff.residual <= 1e-3);  // >= 99.9% of energy captured
}

TEST_CASE("amplitude_spectrum: impulse filter with zero coefficients is flat") {
    ARModel m;
    m.p = 5;
    m.a = Eigen::VectorXd::Zero(5);
    m.valid = true;
    FormingFilter ff;
    ff.model = m;
    ff.h = Eigen::VectorXd::Zero(5);
    ff.h(0) = 1.0;
    const SpectrumEstimate se = amplitude_spectrum(ff, 64);
    for (int i = 0; i < 64; ++i)
        CHECK(se.amplitude(i) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("amplitude_spectrum: single sinusoid peak lands on f with its amplitude") {
    const double f = 0.2, a0 = 1.3;
    TimeSeries x(124);
    CounterRng rng(3, 1);
    for (std::size_t n = 0; n < x.size(); ++n)
        x[n] = a0 * std::cos(2.0 * M_PI * f * double(n) + 0.3) + 1e-2 * rng.gaussian();
    const ARModel m = symmetric_model_for(x, 4);
    const FormingFilter ff = build_forming_filter(x.view(), m);
    const SpectrumEstimate se = amplitude_spectrum(ff, 1024);
    const auto peaks = spectrum_peaks(se, 0.1);
    REQUIRE(!peaks.empty());
    const double bin = 0.5 / 1023.0;
    CHECK(std::abs(peaks[0].freq - f) <= bin);
    CHECK(peaks[0].amplitude == doctest::Approx(a0).epsilon(0.20));
}

TEST_CASE("amplitude_spectrum: finite and positive over the whole grid at unit roots") {
    // the failure mode of pole-based spectra at unit-circle roots must not occur
    TimeSeries x(512);
    for (std::size_t n = 0; n < x.size(); ++n)
        x[n] = std::cos(2.0 * M_PI * 0.15 * double(n)) +
               std::cos(2.0 * M_PI * 0.33 * double(n) + 0.5);
    const ARModel m = symmetric_model_for(x, 4);
    const auto roots = char_roots(m);
    for (const auto& z : roots) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-3);
    const FormingFilter ff = build_forming_filter(x.view(), m);
    const SpectrumEstimate se = amplitude_spectrum(ff, 2048);
    for (int i = 0; i < se.amplitude.size(); ++i) {
        CHECK(std::isfinite(se.amplitude(i)));
        CHECK(se.amplitude(i) > 0.0);
    }
}

TEST_CASE("amplitude_spectrum: scaling the segment scales h and the peaks by c") {
    TimeSeries x(160);
    CounterRng rng(9, 1);
    for (std::size_t n = 0; n < x.size(); ++n)
        x[n] = std::cos(2.0 * M_PI * 0.22 * double(n)) + 1e-4 * rng.gaussian();
    const ARModel m = symmetric_model_for(x, 4);
    const FormingFilter f1 = build_forming_filter(x.view(), m);
    const double c = 2.5;
    TimeSeries y = x;
    for (double& v : y.samples) v *= c;
    const FormingFilter f2 = build_forming_filter(y.view(), m);
    CHECK((f2.h - c * f1.h).cwiseAbs().maxCoeff() <= 1e-9 * f1.h.cwiseAbs().maxCoeff());
    const SpectrumEstimate s1 = amplitude_spectrum(f1, 256);
    const SpectrumEstimate s2 = amplitude_spectrum(f2, 256);
    CHECK(s2.amplitude.maxCoeff() ==
          doctest::Approx(c * s1.amplitude.maxCoeff()).epsilon(1e-9));
}

TEST_CASE("localized_analysis: empty segment set gives an empty list") {
    const TimeSeries x = gen_noise(256, NoiseSpec{}, 4);
    SegmentSet none;
    const auto spectra = localized_analysis(x, none, 8, true, 256);
    CHECK(spectra.empty());
}

TEST_CASE("localized_analysis: segments shorter than 2p are skipped with notice") {
    const TimeSeries x = gen_noise(256, NoiseSpec{}, 4);
    SegmentSet set;
    set.segments.push_back({10, 20, 1.0});   // too short for p=8
    set.segments.push_back({50, 180, 1.0});  // long enough
    std::vector<std::size_t> skipped;
    const auto spectra = localized_analysis(x, set, 8, false, 128, &skipped);
    CHECK(spectra.size() == 1);
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0] == 0);
}

TEST_CASE("track_peaks: stationary sinusoid keeps a constant dominant peak") {
    TimeSeries x(800);
    CounterRng rng(6, 1);
    for (std::size_t n = 0; n < x.size(); ++n)
        x[n] = std::cos(2.0 * M_PI * 0.27 * double(n)) + 1e-3 * rng.gaussian();
    DetectorConfig cfg;
    cfg.window_len = 128;
    cfg.hop = 64;
    const Spectrogram sg = track_peaks(x, cfg, 4, true, 1024, 0.5);
    REQUIRE(!sg.centers.empty());
    const double bin = 0.5 / 1023.0;
    for (const auto& peaks : sg.peaks) {
        REQUIRE(!peaks.empty());
        CHECK(std::abs(peaks[0].freq - 0.27) <= bin);
    }
}

TEST_CASE("track_peaks: two simultaneous chirps give two associable trajectories") {
    ChirpSpec c1;
    c1.f_start = 0.10;
    c1.f_end = 0.18;
    c1.start = 0;
    c1.duration = 800;
    ChirpSpec c2;
    c2.f_start = 0.30;
    c2.f_end = 0.40;
    c2.start = 0;
    c2.duration = 800;
    const TimeSeries a = gen_chirp(c1, 800);
    const TimeSeries b = gen_chirp(c2, 800);
    TimeSeries x(800);
    for (std::size_t n = 0; n < 800; ++n) x[n] = a[n] + b[n];

    DetectorConfig cfg;
    cfg.window_len = 160;
    cfg.hop = 40;
    const Spectrogram sg = track_peaks(x, cfg, 8, true, 1024, 0.3);
    REQUIRE(sg.centers.size() >= 10);

    // associate by nearest-frequency continuation against the known laws
    std::size_t good = 0, total = 0;
    for (std::size_t w = 0; w < sg.centers.size(); ++w) {
        const double t = double(sg.centers[w]);
        const double want1 = 0.10 + (0.18 - 0.10) * t / 800.0;
        const double want2 = 0.30 + (0.40 - 0.30) * t / 800.0;
        ++total;
        bool hit1 = false, hit2 = false;
        for (const auto& pk : sg.peaks[w]) {
            if (std::abs(pk.freq - want1) < 0.02) hit1 = true;
            if (std::abs(pk.freq - want2) < 0.02) hit2 = true;
        }
        if (hit1 && hit2) ++good;
    }
    CHECK(double(good) / double(total) >= 0.9);
}
