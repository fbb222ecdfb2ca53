#pragma once

#include <cmath>
#include <cstdint>

namespace wavekit {

/// Counter-based pseudo-random generator. Every draw is a pure function of
/// (seed, counter), so identical seeds give identical streams and independent
/// substreams can be split off without sharing state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(mix(seed ^ mix(stream * 0x9e3779b97f4a7c15ULL + 1))) {}

    /// Independent child generator; child streams never collide with the
    /// parent's own draw sequence.
    CounterRng split(std::uint64_t stream) const {
        CounterRng r(0);
        r.seed_ = mix(seed_ + mix(stream * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL));
        return r;
    }

    /// Uniform on [0, 1) from the top 53 bits of the counter hash.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draws are consumed in pairs.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // uniform() can return exactly 0; log(0) must not happen
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() { return mix(seed_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wavekit
