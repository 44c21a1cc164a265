#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "qgs/lattice.hpp"

namespace qgs {

// Philox4x32-10 (Salmon et al., SC'11).  Keyed, counter-based: every draw is
// a pure function of (key, counter), so parallel streams need no state.
struct Philox4x32 {
    static constexpr uint32_t kM0 = 0xD2511F53u;
    static constexpr uint32_t kM1 = 0xCD9E8D57u;
    static constexpr uint32_t kW0 = 0x9E3779B9u;
    static constexpr uint32_t kW1 = 0xBB67AE85u;

    static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                         std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = static_cast<uint64_t>(kM0) * ctr[0];
            uint64_t p1 = static_cast<uint64_t>(kM1) * ctr[2];
            uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
            uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kW0;
            key[1] += kW1;
        }
        return ctr;
    }
};

/// Two uniforms in (0,1) from one Philox block.
inline std::array<double, 2> philox_uniform2(uint64_t seed, uint32_t c0, uint32_t c1,
                                             uint32_t c2, uint32_t c3) {
    auto r = Philox4x32::block({c0, c1, c2, c3},
                               {static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)});
    auto to_unit = [](uint32_t hi, uint32_t lo) {
        uint64_t v = (static_cast<uint64_t>(hi) << 32) | lo;
        return (static_cast<double>(v >> 11) + 0.5) * 0x1p-53;
    };
    return {to_unit(r[0], r[1]), to_unit(r[2], r[3])};
}

/// Two standard normals (Box-Muller) keyed by (seed, particle, step, slot).
inline std::array<double, 2> philox_normal2(uint64_t seed, uint32_t particle, uint32_t step,
                                            uint32_t slot) {
    auto u = philox_uniform2(seed, particle, step, slot, 0u);
    double rad = std::sqrt(-2.0 * std::log(u[0]));
    double ang = kTwoPi * u[1];
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

}  // namespace qgs
