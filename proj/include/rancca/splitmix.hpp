#pragma once

#include <cmath>
#include <cstdint>

namespace rancca {

/// SplitMix64 stream with a Box-Muller normal on top. This is the single
/// noise source of the simulator; the exact constants and draw discipline
/// are pinned in docs/formats.md so traces can be reproduced outside C++.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via the trigonometric Box-Muller transform.
    /// Consumes exactly two uniforms per draw; nothing is cached.
    double next_normal() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        // 1 - u1 is in (0, 1] and exactly representable, so the log is finite.
        return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(kTwoPi * u2);
    }

private:
    static constexpr double kTwoPi = 6.283185307179586; // 0x1.921fb54442d18p+2
    std::uint64_t state_;
};

} // namespace rancca
