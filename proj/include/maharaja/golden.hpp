// golden.hpp -- exact integer arithmetic with the golden ratio

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace maharaja {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr double kPhi = 1.6180339887498948482;

/// floor(sqrt(v)), exact over the whole 128-bit range.
constexpr u128 isqrt(u128 v) noexcept
{
    if (v < 2)
        return v;
    const auto hi = static_cast<u64>(v >> 64);
    const auto lo = static_cast<u64>(v);
    const int bits = hi ? 64 + std::bit_width(hi) : std::bit_width(lo);
    // 2^ceil(bits/2) >= sqrt(v); Newton descends monotonically from above.
    u128 x = u128{1} << ((bits + 1) / 2);
    for (;;) {
        const u128 y = (x + v / x) / 2;
        if (y >= x)
            return x;
        x = y;
    }
}

namespace detail {

// Largest n with 5*n*n representable in 128 bits.
inline constexpr u64 kMaxGoldenArg = static_cast<u64>(isqrt(~u128{0} / 5));

inline u128 sqrt5_times(u64 n)
{
    if (n > kMaxGoldenArg)
        throw std::overflow_error("golden: argument too large for exact arithmetic");
    const u128 m = n;
    return isqrt(5 * m * m);
}

} // namespace detail

/// floor(phi * n) = floor((n + sqrt(5 n^2)) / 2).
inline u64 floor_phi(u64 n)
{
    const u128 r = (u128{n} + detail::sqrt5_times(n)) / 2;
    if (r > ~u64{0})
        throw std::overflow_error("golden: floor(phi*n) overflows 64 bits");
    return static_cast<u64>(r);
}

/// floor(n / phi) = floor((sqrt(5 n^2) - n) / 2).
inline u64 floor_div_phi(u64 n)
{
    if (n == 0)
        return 0;
    return static_cast<u64>((detail::sqrt5_times(n) - n) / 2);
}

/// The n-th Wythoff pair (floor(phi n), floor(phi^2 n)); phi^2 = phi + 1.
inline std::pair<u64, u64> wythoff_pair(u64 n)
{
    const u64 a = floor_phi(n);
    if (a > ~u64{0} - n)
        throw std::overflow_error("wythoff_pair: floor(phi^2 n) overflows 64 bits");
    return {a, a + n};
}

/// Smallest p >= 0 with phi^p >= v.
inline unsigned ceil_log_phi(u64 v)
{
    unsigned p = 0;
    long double power = 1.0L;
    while (power < static_cast<long double>(v)) {
        power *= static_cast<long double>(kPhi);
        ++p;
    }
    return p;
}

} // namespace maharaja
