#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detect.hpp"
#include "signals.hpp"

namespace wavekit {

/// Ground-truth description of one generated component.
struct ScenarioComponent {
    bool is_chirp = false;
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive
    double f0 = 0.0;
    double f1 = 0.0;  // == f0 for packets
};

/// A named, reproducible test setup: generated record, ground truth, and the
/// analysis parameters that go with it.
struct Scenario {
    std::string name;
    TimeSeries clean;
    TimeSeries record;
    double snr_db = 0.0;
    double measured_snr_db = 0.0;
    std::uint64_t seed = 0;
    std::vector<ScenarioComponent> truth;
    DetectorConfig detector;
    int spectrum_order = 16;
    bool symmetric = true;
    std::size_t grid = 1024;
};

/// Known names: fig3 fig4 fig5 fig6 fig7 fig8 km minwin48 minwin32.
/// Pass NaN for snr_db to use the scenario default.
Scenario build_scenario(const std::string& name, double snr_db, std::uint64_t seed);

std::vector<std::string> scenario_names();

}  // namespace wavekit
