#pragma once

#include <cstdint>
#include <vector>

#include "series.hpp"

namespace wavekit {

enum class Envelope { Rectangular, RaisedCosine };

/// Wave packet: an enveloped filling sinusoid on [start, start+duration).
struct PacketSpec {
    double fill_freq = 0.25;  // cycles/sample, in (0, 0.5)
    std::size_t start = 0;
    std::size_t duration = 0;
    Envelope envelope = Envelope::RaisedCosine;
    double amplitude = 1.0;
};

enum class ChirpLaw { Linear, Quadratic };

/// Frequency-swept packet. The sweep must stay inside (0, 0.5).
struct ChirpSpec {
    double f_start = 0.1;
    double f_end = 0.4;
    std::size_t start = 0;
    std::size_t duration = 0;
    double amplitude = 1.0;
    ChirpLaw law = ChirpLaw::Linear;
};

enum class NoiseKind { WhiteGaussian, ArColored };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::WhiteGaussian;
    // y_n = sum_i coeffs[i] * y_{n-i-1} + e_n; used when kind == ArColored
    std::vector<double> ar_coeffs = {0.8};
};

struct NoisyResult {
    TimeSeries series;
    double measured_snr_db = 0.0;  // masked convention, see masked_snr_db()
};

/// Sum of enveloped sinusoids; zero outside packet supports. Overlapping
/// supports add. Raised-cosine envelopes taper 10% of the duration per side.
TimeSeries gen_packets(const std::vector<PacketSpec>& specs, std::size_t record_len);

/// Phase-continuous chirp whose instantaneous frequency follows the spec's law.
TimeSeries gen_chirp(const ChirpSpec& spec, std::size_t record_len);

/// signal + scaled noise, calibrated so that the SNR measured over the samples
/// where the signal envelope exceeds 0.1 of its maximum equals snr_db.
/// snr_db == +infinity returns the signal unchanged. Deterministic in seed.
NoisyResult add_noise(const TimeSeries& signal, double snr_db, const NoiseSpec& noise,
                      std::uint64_t seed);

/// Unit-variance noise record (no signal), same generator as add_noise.
TimeSeries gen_noise(std::size_t n, const NoiseSpec& noise, std::uint64_t seed,
                     double sigma = 1.0);

/// 64-sample test record: three sinusoids plus AR(1)-filtered Gaussian noise.
/// `noise_scale` = 0 gives the clean sinusoid sum.
TimeSeries gen_kaymarple_like(std::uint64_t seed, double noise_scale = 1.0);

/// Local-peak signal envelope: max |s| over a centered 5-sample window.
std::vector<double> local_envelope(const TimeSeries& s);

/// 10*log10(Ps/Pn) measured over the samples where local_envelope(signal)
/// exceeds 0.1 of its maximum.
double masked_snr_db(const TimeSeries& signal, const TimeSeries& noise);

}  // namespace wavekit
