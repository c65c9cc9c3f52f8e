#pragma once

#include <cmath>
#include <cstdint>

namespace gsmix {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over the platform engines so
// that sweep output is reproducible across standard libraries; the seed is
// echoed in every output file's metadata line.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Independent child stream; advances this generator by one step.
    SplitMix64 split() { return SplitMix64(next()); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

private:
    std::uint64_t state_;
};

} // namespace gsmix
