#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace isc {

// 53-bit uniform in [0,1); avoids distribution objects so draws are identical
// across standard library implementations.
inline double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline int sample_cdf(std::span<const double> p, std::mt19937_64& rng) {
    const double r = u01(rng);
    double acc = 0.0;
    int last_pos = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        last_pos = static_cast<int>(i);
        acc += p[i];
        if (r < acc) return last_pos;
    }
    return last_pos;
}

// seed_seq keeps only the low 32 bits of each entry, so wide seeds are split.
inline std::mt19937_64 make_rng(std::uint64_t a, std::uint64_t b = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace isc
