#pragma once

#include <cstdint>

namespace pseudofib {

/// SplitMix64 generator (Steele/Lea/Flood constants). Chosen so that a port in
/// any language can reproduce the exact sample stream from the seed alone; the
/// verification reports additionally record raw sampled coordinates for audit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53 mantissa bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

private:
    std::uint64_t state_;
};

/// Derives the independent per-section stream: seed advanced by the golden
/// ratio increment times the section index, then mixed once.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t section) {
    SplitMix64 g(seed + 0x9E3779B97F4A7C15ULL * (section + 1));
    (void)g.next_u64();
    return g;
}

}  // namespace pseudofib
