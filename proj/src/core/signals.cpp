#include "signals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace wavekit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double taper_value(std::size_t k, std::size_t duration, Envelope env) {
    if (env == Envelope::Rectangular) return 1.0;
    // raised cosine over 10% of the duration on each side
    const std::size_t taper = std::max<std::size_t>(1, (duration + 5) / 10);
    const std::size_t tail = duration - 1 - k;
    const std::size_t edge = std::min(k, tail);
    if (edge >= taper) return 1.0;
    return 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(edge) / static_cast<double>(taper)));
}

void check_packet(const PacketSpec& s, std::size_t record_len) {
    if (s.duration == 0 || s.start + s.duration > record_len)
        throw std::invalid_argument("packet support must lie inside the record");
    if (!(s.fill_freq > 0.0 && s.fill_freq < 0.5))
        throw std::invalid_argument("fill frequency must lie in (0, 0.5) cycles/sample");
    if (!(s.amplitude >= 0.0) || !std::isfinite(s.amplitude))
        throw std::invalid_argument("packet amplitude must be finite and non-negative");
}

// Phase of the chirp at elapsed time t (samples): 2*pi * integral of f.
double chirp_phase(const ChirpSpec& s, double t) {
    const double df = s.f_end - s.f_start;
    const double d = static_cast<double>(s.duration);
    switch (s.law) {
        case ChirpLaw::Linear:
            return kTwoPi * (s.f_start * t + 0.5 * df * t * t / d);
        case ChirpLaw::Quadratic:
            return kTwoPi * (s.f_start * t + df * t * t * t / (3.0 * d * d));
    }
    return 0.0;
}

TimeSeries raw_noise(std::size_t n, const NoiseSpec& spec, CounterRng rng) {
    TimeSeries out(n);
    if (spec.kind == NoiseKind::WhiteGaussian) {
        for (std::size_t i = 0; i < n; ++i) out[i] = rng.gaussian();
        return out;
    }
    const auto& c = spec.ar_coeffs;
    if (c.empty()) throw std::invalid_argument("AR noise requires at least one coefficient");
    for (double ci : c)
        if (!std::isfinite(ci)) throw std::invalid_argument("AR noise coefficient not finite");
    const std::size_t warmup = 256 + 10 * c.size();
    std::vector<double> y(warmup + n, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double v = rng.gaussian();
        for (std::size_t k = 0; k < c.size() && k < i; ++k) v += c[k] * y[i - 1 - k];
        y[i] = v;
    }
    std::copy(y.begin() + warmup, y.end(), out.samples.begin());
    return out;
}

}  // namespace

TimeSeries gen_packets(const std::vector<PacketSpec>& specs, std::size_t record_len) {
    if (specs.empty()) throw std::invalid_argument("gen_packets: no packet specs");
    if (record_len < 2) throw std::invalid_argument("gen_packets: record too short");
    TimeSeries out(record_len);
    for (const auto& s : specs) {
        check_packet(s, record_len);
        for (std::size_t k = 0; k < s.duration; ++k) {
            const double env = taper_value(k, s.duration, s.envelope);
            out[s.start + k] +=
                s.amplitude * env * std::cos(kTwoPi * s.fill_freq * static_cast<double>(k));
        }
    }
    return out;
}

TimeSeries gen_chirp(const ChirpSpec& spec, std::size_t record_len) {
    if (spec.duration < 2 || spec.start + spec.duration > record_len)
        throw std::invalid_argument("chirp support must lie inside the record");
    if (spec.f_start == spec.f_end)
        throw std::invalid_argument("chirp requires f_start != f_end");
    // both laws are monotone in t, so endpoint checks cover the whole sweep
    for (double f : {spec.f_start, spec.f_end})
        if (!(f > 0.0 && f < 0.5))
            throw std::invalid_argument("chirp sweep must stay inside (0, 0.5) cycles/sample");
    if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude))
        throw std::invalid_argument("chirp amplitude must be finite and non-negative");
    TimeSeries out(record_len);
    for (std::size_t k = 0; k < spec.duration; ++k)
        out[spec.start + k] =
            spec.amplitude * std::cos(chirp_phase(spec, static_cast<double>(k)));
    return out;
}

std::vector<double> local_envelope(const TimeSeries& s) {
    const std::size_t n = s.size();
    std::vector<double> env(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= 2 ? i - 2 : 0;
        const std::size_t hi = std::min(n - 1, i + 2);
        double m = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) m = std::max(m, std::abs(s[j]));
        env[i] = m;
    }
    return env;
}

namespace {

std::vector<std::size_t> active_mask(const TimeSeries& signal) {
    const auto env = local_envelope(signal);
    const double peak = *std::max_element(env.begin(), env.end());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < env.size(); ++i)
        if (env[i] > 0.1 * peak) idx.push_back(i);
    return idx;
}

double masked_power(const TimeSeries& s, const std::vector<std::size_t>& idx) {
    double p = 0.0;
    for (std::size_t i : idx) p += s[i] * s[i];
    return idx.empty() ? 0.0 : p / static_cast<double>(idx.size());
}

}  // namespace

double masked_snr_db(const TimeSeries& signal, const TimeSeries& noise) {
    if (signal.size() != noise.size())
        throw std::invalid_argument("masked_snr_db: length mismatch");
    const auto idx = active_mask(signal);
    const double ps = masked_power(signal, idx);
    const double pn = masked_power(noise, idx);
    if (pn == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ps / pn);
}

NoisyResult add_noise(const TimeSeries& signal, double snr_db, const NoiseSpec& noise,
                      std::uint64_t seed) {
    for (double v : signal.samples)
        if (!std::isfinite(v)) throw std::invalid_argument("add_noise: signal not finite");
    if (std::isinf(snr_db) && snr_db > 0)
        return {signal, std::numeric_limits<double>::infinity()};
    const bool all_zero =
        std::all_of(signal.samples.begin(), signal.samples.end(), [](double v) { return v == 0.0; });
    if (all_zero)
        throw std::invalid_argument("add_noise: SNR undefined for an all-zero signal");

    TimeSeries eta = raw_noise(signal.size(), noise, CounterRng(seed, /*stream=*/1));
    const auto idx = active_mask(signal);
    const double ps = masked_power(signal, idx);
    const double pn = masked_power(eta, idx);
    if (pn == 0.0) throw std::runtime_error("add_noise: degenerate noise draw");
    const double alpha = std::sqrt(ps * std::pow(10.0, -snr_db / 10.0) / pn);

    NoisyResult res;
    res.series = signal;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        eta[i] *= alpha;
        res.series[i] += eta[i];
    }
    res.measured_snr_db = masked_snr_db(signal, eta);
    return res;
}

TimeSeries gen_noise(std::size_t n, const NoiseSpec& noise, std::uint64_t seed, double sigma) {
    if (n < 2) throw std::invalid_argument("gen_noise: record too short");
    TimeSeries out = raw_noise(n, noise, CounterRng(seed, /*stream=*/2));
    if (noise.kind == NoiseKind::ArColored) {
        // normalize the filtered stream to unit sample variance
        double p = 0.0;
        for (double v : out.samples) p += v * v;
        p = std::sqrt(p / static_cast<double>(n));
        if (p > 0.0)
            for (double& v : out.samples) v /= p;
    }
    for (double& v : out.samples) v *= sigma;
    return out;
}

TimeSeries gen_kaymarple_like(std::uint64_t seed, double noise_scale) {
    constexpr std::size_t kLen = 64;
    // three well-separated tones; the colored noise, not the tones, drives
    // the high-order correlation structure
    constexpr double freqs[3] = {0.10, 0.20, 0.35};
    constexpr double amps[3] = {1.0, 1.0, 1.0};
    constexpr double phases[3] = {0.0, 0.7, 1.9};
    TimeSeries out(kLen);
    for (std::size_t n = 0; n < kLen; ++n) {
        double v = 0.0;
        for (int j = 0; j < 3; ++j)
            v += amps[j] * std::cos(kTwoPi * freqs[j] * static_cast<double>(n) + phases[j]);
        out[n] = v;
    }
    if (noise_scale != 0.0) {
        NoiseSpec colored;
        colored.kind = NoiseKind::ArColored;
        colored.ar_coeffs = {0.8};
        TimeSeries eta = raw_noise(kLen, colored, CounterRng(seed, /*stream=*/3));
        for (std::size_t n = 0; n < kLen; ++n) out[n] += noise_scale * eta[n];
    }
    return out;
}

}  // namespace wavekit
