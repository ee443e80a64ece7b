#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace leo {

using Rng = std::mt19937_64;

// Independent seeded streams so that, e.g., adding users never perturbs the
// exploration draws of an agent.
namespace stream {
inline constexpr std::uint64_t users = 1;
inline constexpr std::uint64_t shadowing = 2;
inline constexpr std::uint64_t catalog = 3;
inline constexpr std::uint64_t agent = 4;
}  // namespace stream

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t a = 0, std::uint64_t b = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(b)};
    return Rng(seq);
}

// Uniform in (0, 1]; never returns 0 so that `draw <= 0` is impossible.
inline double uniform01(Rng& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform in [0, count).
inline std::size_t uniform_index(Rng& rng, std::size_t count) {
    const auto i = static_cast<std::size_t>(static_cast<double>(rng() >> 11) * 0x1.0p-53 * static_cast<double>(count));
    return i < count ? i : count - 1;
}

// Standard normal by Box-Muller, independent of the standard library's
// distribution implementation.
inline double standard_normal(Rng& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
}

}  // namespace leo
