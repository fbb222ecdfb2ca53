#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace wavekit {

/// Real-valued sample sequence. Frequencies throughout the library are
/// relative (cycles/sample) on [0, 0.5].
struct TimeSeries {
    std::vector<double> samples;

    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> s) : samples(std::move(s)) {}
    explicit TimeSeries(std::size_t n) : samples(n, 0.0) {}

    std::size_t size() const { return samples.size(); }
    double& operator[](std::size_t i) { return samples[i]; }
    double operator[](std::size_t i) const { return samples[i]; }

    std::span<const double> view() const { return samples; }
    std::span<const double> view(std::size_t offset, std::size_t len) const {
        if (offset + len > samples.size())
            throw std::invalid_argument("TimeSeries::view: range out of bounds");
        return std::span<const double>(samples.data() + offset, len);
    }
};

}  // namespace wavekit
