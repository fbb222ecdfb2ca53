#include "scenario.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavekit {

namespace {

struct PacketLayout {
    std::size_t record_len;
    std::vector<PacketSpec> packets;
};

// Three packets with the canonical fill frequencies, spaced so that windows
// between packets see noise only.
PacketLayout three_packets(std::size_t record_len, std::size_t duration, std::size_t first,
                           std::size_t spacing) {
    PacketLayout lay;
    lay.record_len = record_len;
    const double fills[3] = {0.018, 0.27, 0.47};
    for (int i = 0; i < 3; ++i) {
        PacketSpec ps;
        ps.fill_freq = fills[i];
        ps.start = first + i * spacing;
        ps.duration = duration;
        ps.envelope = Envelope::RaisedCosine;
        ps.amplitude = 1.0;
        lay.packets.push_back(ps);
    }
    return lay;
}

void fill_truth_from_packets(Scenario& sc, const PacketLayout& lay) {
    for (const auto& ps : lay.packets)
        sc.truth.push_back({false, ps.start, ps.start + ps.duration, ps.fill_freq, ps.fill_freq});
}

Scenario packets_scenario(const std::string& name, double snr_db, std::uint64_t seed,
                          const PacketLayout& lay) {
    Scenario sc;
    sc.name = name;
    sc.snr_db = snr_db;
    sc.seed = seed;
    sc.clean = gen_packets(lay.packets, lay.record_len);
    auto noisy = add_noise(sc.clean, snr_db, NoiseSpec{}, seed);
    sc.record = std::move(noisy.series);
    sc.measured_snr_db = noisy.measured_snr_db;
    fill_truth_from_packets(sc, lay);
    return sc;
}

Scenario chirps_scenario(const std::string& name, double snr_db, std::uint64_t seed) {
    const std::size_t record_len = 1600;
    ChirpSpec c1;
    c1.f_start = 0.10;
    c1.f_end = 0.22;
    c1.start = 150;
    c1.duration = 600;
    c1.law = ChirpLaw::Linear;
    ChirpSpec c2;
    c2.f_start = 0.30;
    c2.f_end = 0.42;
    c2.start = 850;
    c2.duration = 600;
    c2.law = ChirpLaw::Quadratic;

    Scenario sc;
    sc.name = name;
    sc.snr_db = snr_db;
    sc.seed = seed;
    TimeSeries a = gen_chirp(c1, record_len);
    TimeSeries b = gen_chirp(c2, record_len);
    sc.clean = TimeSeries(record_len);
    for (std::size_t i = 0; i < record_len; ++i) sc.clean[i] = a[i] + b[i];
    auto noisy = add_noise(sc.clean, snr_db, NoiseSpec{}, seed);
    sc.record = std::move(noisy.series);
    sc.measured_snr_db = noisy.measured_snr_db;
    sc.truth.push_back({true, c1.start, c1.start + c1.duration, c1.f_start, c1.f_end});
    sc.truth.push_back({true, c2.start, c2.start + c2.duration, c2.f_start, c2.f_end});

    sc.detector.window_len = 200;
    sc.detector.hop = 25;
    sc.spectrum_order = 16;
    return sc;
}

Scenario minwin_scenario(const std::string& name, std::size_t window_len, double snr_db,
                         std::uint64_t seed) {
    PacketSpec ps;
    ps.fill_freq = 0.27;
    ps.start = 192;
    ps.duration = 128;
    ps.envelope = Envelope::RaisedCosine;
    ps.amplitude = 1.0;

    Scenario sc;
    sc.name = name;
    sc.snr_db = snr_db;
    sc.seed = seed;
    sc.clean = gen_packets({ps}, 512);
    auto noisy = add_noise(sc.clean, snr_db, NoiseSpec{}, seed);
    sc.record = std::move(noisy.series);
    sc.measured_snr_db = noisy.measured_snr_db;
    sc.truth.push_back({false, ps.start, ps.start + ps.duration, ps.fill_freq, ps.fill_freq});

    sc.detector.window_len = window_len;
    sc.detector.hop = std::max<std::size_t>(1, window_len / 8);
    return sc;
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "km", "minwin48", "minwin32"};
}

Scenario build_scenario(const std::string& name, double snr_db, std::uint64_t seed) {
    const bool use_default = std::isnan(snr_db);
    if (name == "fig3" || name == "fig6") {
        const double snr = use_default ? -10.0 : snr_db;
        auto lay = three_packets(1024, 160, 96, 336);
        Scenario sc = packets_scenario(name, snr, seed, lay);
        sc.detector.window_len = 64;
        sc.detector.hop = 8;
        sc.spectrum_order = 16;
        return sc;
    }
    if (name == "fig4" || name == "fig7") {
        const double snr = use_default ? -20.0 : snr_db;
        auto lay = three_packets(2048, 224, 160, 672);
        Scenario sc = packets_scenario(name, snr, seed, lay);
        sc.detector.window_len = 256;
        sc.detector.hop = 32;
        sc.spectrum_order = name == "fig7" ? 24 : 16;
        return sc;
    }
    if (name == "fig5" || name == "fig8") {
        return chirps_scenario(name, use_default ? -10.0 : snr_db, seed);
    }
    if (name == "km") {
        Scenario sc;
        sc.name = name;
        sc.snr_db = std::numeric_limits<double>::quiet_NaN();
        sc.seed = seed;
        sc.record = gen_kaymarple_like(seed);
        sc.clean = gen_kaymarple_like(seed, 0.0);
        sc.detector.window_len = 64;
        sc.detector.hop = 8;
        sc.detector.scan_lo = 8;
        sc.detector.scan_hi = 33;
        return sc;
    }
    if (name == "minwin48") return minwin_scenario(name, 48, use_default ? -10.0 : snr_db, seed);
    if (name == "minwin32") return minwin_scenario(name, 32, use_default ? -10.0 : snr_db, seed);
    throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace wavekit
