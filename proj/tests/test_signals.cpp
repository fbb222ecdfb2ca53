#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "signals.hpp"

using namespace wavekit;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Independent phase oracle: integrate the instantaneous-frequency law by
// Simpson quadrature on a fine grid, never through the closed forms the
// generator uses.
double quad_phase(const ChirpSpec& s, double t) {
    auto f = [&](double u) {
        const double d = static_cast<double>(s.duration);
        const double frac = u / d;
        if (s.law == ChirpLaw::Linear) return s.f_start + (s.f_end - s.f_start) * frac;
        return s.f_start + (s.f_end - s.f_start) * frac * frac;
    };
    const int steps = 2000;
    const double h = t / steps;
    if (t == 0.0) return 0.0;
    double acc = f(0.0) + f(t);
    for (int i = 1; i < steps; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return kTwoPi * acc * h / 3.0;
}

// plain O(n^2) DFT magnitude, enough for 64-sample records
std::vector<double> dft_mag(const TimeSeries& x) {
    const std::size_t n = x.size();
    std::vector<double> mag(n / 2 + 1);
    for (std::size_t k = 0; k < mag.size(); ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            acc += x[i] * std::polar(1.0, -kTwoPi * double(k) * double(i) / double(n));
        mag[k] = std::abs(acc);
    }
    return mag;
}

}  // namespace

TEST_CASE("gen_packets: rectangular packet matches direct trigonometric loop") {
    PacketSpec ps;
    ps.fill_freq = 0.25;
    ps.start = 10;
    ps.duration = 64;
    ps.envelope = Envelope::Rectangular;
    ps.amplitude = 1.0;
    const TimeSeries x = gen_packets({ps}, 128);
    for (std::size_t n = 0; n < 128; ++n) {
        if (n >= 10 && n < 74) {
            const double want = std::cos(kTwoPi * 0.25 * double(n - 10));
            CHECK(x[n] == doctest::Approx(want).epsilon(1e-12));
        } else {
            CHECK(x[n] == 0.0);
        }
    }
}

TEST_CASE("gen_packets: zero amplitude gives the zero record") {
    PacketSpec ps;
    ps.fill_freq = 0.1;
    ps.start = 0;
    ps.duration = 50;
    ps.amplitude = 0.0;
    const TimeSeries x = gen_packets({ps}, 64);
    for (double v : x.samples) CHECK(v == 0.0);
}

TEST_CASE("gen_packets: three-packet layout is supported and zero outside") {
    std::vector<PacketSpec> specs;
    const double fills[3] = {0.018, 0.27, 0.47};
    for (int i = 0; i < 3; ++i) {
        PacketSpec ps;
        ps.fill_freq = fills[i];
        ps.start = 96 + 336 * i;
        ps.duration = 160;
        specs.push_back(ps);
    }
    const TimeSeries x = gen_packets(specs, 1024);
    REQUIRE(x.size() == 1024);
    for (std::size_t n = 0; n < 96; ++n) CHECK(x[n] == 0.0);
    for (std::size_t n = 256; n < 432; ++n) CHECK(x[n] == 0.0);
    double inside = 0.0;
    for (std::size_t n = 96; n < 256; ++n) inside += x[n] * x[n];
    CHECK(inside > 0.0);
}

TEST_CASE("gen_packets: linear in the spec list") {
    PacketSpec a;
    a.fill_freq = 0.1;
    a.start = 5;
    a.duration = 40;
    PacketSpec b;
    b.fill_freq = 0.3;
    b.start = 20;  // overlapping support is allowed
    b.duration = 50;
    const TimeSeries both = gen_packets({a, b}, 100);
    const TimeSeries xa = gen_packets({a}, 100);
    const TimeSeries xb = gen_packets({b}, 100);
    for (std::size_t n = 0; n < 100; ++n)
        CHECK(both[n] == doctest::Approx(xa[n] + xb[n]).epsilon(1e-14));
}

TEST_CASE("gen_packets: rejects bad specs") {
    PacketSpec ps;
    ps.fill_freq = 0.6;  // out of range
    ps.start = 0;
    ps.duration = 10;
    CHECK_THROWS_AS(gen_packets({ps}, 64), std::invalid_argument);
    ps.fill_freq = 0.2;
    ps.start = 60;
    ps.duration = 10;  // runs past the record
    CHECK_THROWS_AS(gen_packets({ps}, 64), std::invalid_argument);
    CHECK_THROWS_AS(gen_packets({}, 64), std::invalid_argument);
}

TEST_CASE("gen_chirp: linear sweep phase matches quadrature and law is linear") {
    ChirpSpec cs;
    cs.f_start = 0.05;
    cs.f_end = 0.45;
    cs.start = 0;
    cs.duration = 200;
    cs.law = ChirpLaw::Linear;
    const TimeSeries x = gen_chirp(cs, 200);
    // samples agree with the independently integrated phase
    for (std::size_t n = 0; n < 200; n += 7) {
        const double want = std::cos(quad_phase(cs, double(n)));
        CHECK(x[n] == doctest::Approx(want).epsilon(1e-9));
    }
    // central finite difference of the oracle phase recovers the linear law
    for (int n = 1; n < 199; n += 9) {
        const double fd =
            (quad_phase(cs, n + 0.5) - quad_phase(cs, n - 0.5)) / kTwoPi;
        const double want = 0.05 + (0.45 - 0.05) * double(n) / 200.0;
        CHECK(fd == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("gen_chirp: quadratic law matches at checkpoints") {
    ChirpSpec cs;
    cs.f_start = 0.1;
    cs.f_end = 0.4;
    cs.start = 16;
    cs.duration = 300;
    cs.law = ChirpLaw::Quadratic;
    const TimeSeries x = gen_chirp(cs, 400);
    for (int c = 0; c < 10; ++c) {
        const double t = 30.0 * c + 13.0;
        const double fd = (quad_phase(cs, t + 0.5) - quad_phase(cs, t - 0.5)) / kTwoPi;
        const double frac = t / 300.0;
        const double want = 0.1 + 0.3 * frac * frac;
        CHECK(fd == doctest::Approx(want).epsilon(1e-5));
    }
    // sample values agree with the quadrature phase pointwise
    for (std::size_t k = 0; k < 300; k += 11)
        CHECK(x[cs.start + k] == doctest::Approx(std::cos(quad_phase(cs, double(k)))).epsilon(1e-9));
}

TEST_CASE("gen_chirp: rejects degenerate and out-of-range sweeps") {
    ChirpSpec cs;
    cs.f_start = 0.2;
    cs.f_end = 0.2;
    cs.start = 0;
    cs.duration = 100;
    CHECK_THROWS_AS(gen_chirp(cs, 100), std::invalid_argument);
    cs.f_end = 0.55;
    CHECK_THROWS_AS(gen_chirp(cs, 100), std::invalid_argument);
}

TEST_CASE("add_noise: calibrated masked SNR at -10 and -20 dB") {
    std::vector<PacketSpec> specs;
    const double fills[3] = {0.018, 0.27, 0.47};
    for (int i = 0; i < 3; ++i) {
        PacketSpec ps;
        ps.fill_freq = fills[i];
        ps.start = 96 + 336 * i;
        ps.duration = 160;
        specs.push_back(ps);
    }
    const TimeSeries clean = gen_packets(specs, 1024);
    for (double target : {-10.0, -20.0}) {
        const auto res = add_noise(clean, target, NoiseSpec{}, 42);
        CHECK(std::abs(res.measured_snr_db - target) <= 0.5);
        // cross-check with the standalone measurement
        TimeSeries noise(clean.size());
        for (std::size_t i = 0; i < clean.size(); ++i) noise[i] = res.series[i] - clean[i];
        CHECK(std::abs(masked_snr_db(clean, noise) - target) <= 0.5);
    }
}

TEST_CASE("add_noise: +inf SNR returns the signal unchanged") {
    PacketSpec ps;
    ps.fill_freq = 0.27;
    ps.start = 0;
    ps.duration = 64;
    const TimeSeries clean = gen_packets({ps}, 64);
    const auto res = add_noise(clean, std::numeric_limits<double>::infinity(), NoiseSpec{}, 7);
    for (std::size_t i = 0; i < clean.size(); ++i) CHECK(res.series[i] == clean[i]);
}

TEST_CASE("add_noise: all-zero signal with finite SNR is rejected") {
    TimeSeries zero(128);
    CHECK_THROWS_AS(add_noise(zero, -10.0, NoiseSpec{}, 1), std::invalid_argument);
}

TEST_CASE("add_noise: different seeds change samples, not the calibration") {
    PacketSpec ps;
    ps.fill_freq = 0.27;
    ps.start = 32;
    ps.duration = 128;
    const TimeSeries clean = gen_packets({ps}, 256);
    const auto a = add_noise(clean, -10.0, NoiseSpec{}, 1);
    const auto b = add_noise(clean, -10.0, NoiseSpec{}, 2);
    bool differ = false;
    for (std::size_t i = 0; i < clean.size() && !differ; ++i)
        differ = a.series[i] != b.series[i];
    CHECK(differ);
    CHECK(std::abs(a.measured_snr_db + 10.0) <= 0.5);
    CHECK(std::abs(b.measured_snr_db + 10.0) <= 0.5);
}

TEST_CASE("add_noise: deterministic in the seed, colored kind included") {
    PacketSpec ps;
    ps.fill_freq = 0.2;
    ps.start = 10;
    ps.duration = 100;
    const TimeSeries clean = gen_packets({ps}, 128);
    NoiseSpec colored;
    colored.kind = NoiseKind::ArColored;
    const auto a = add_noise(clean, -5.0, colored, 99);
    const auto b = add_noise(clean, -5.0, colored, 99);
    for (std::size_t i = 0; i < clean.size(); ++i) CHECK(a.series[i] == b.series[i]);
}

TEST_CASE("gen_kaymarple_like: length, determinism, clean spectrum peak count") {
    const TimeSeries x = gen_kaymarple_like(5);
    CHECK(x.size() == 64);
    const TimeSeries y = gen_kaymarple_like(5);
    for (std::size_t i = 0; i < 64; ++i) CHECK(x[i] == y[i]);

    const TimeSeries clean = gen_kaymarple_like(5, 0.0);
    const auto mag = dft_mag(clean);
    const double top = *std::max_element(mag.begin(), mag.end());
    int peaks = 0;
    for (std::size_t k = 1; k + 1 < mag.size(); ++k)
        if (mag[k] > mag[k - 1] && mag[k] > mag[k + 1] && mag[k] > 0.25 * top) ++peaks;
    CHECK(peaks == 3);
}

TEST_CASE("gen_noise: white kind has the requested scale and is seed-stable") {
    const TimeSeries x = gen_noise(4096, NoiseSpec{}, 13, 2.0);
    double p = 0.0;
    for (double v : x.samples) p += v * v;
    p /= double(x.size());
    CHECK(p == doctest::Approx(4.0).epsilon(0.1));
    const TimeSeries y = gen_noise(4096, NoiseSpec{}, 13, 2.0);
    for (std::size_t i = 0; i < 64; ++i) CHECK(x[i] == y[i]);
}
