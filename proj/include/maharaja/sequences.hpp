// sequences.hpp -- complementary sequences, slope constants and deviation bounds

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "golden.hpp"
#include "oracle.hpp"

namespace maharaja {

/// Slopes of a complementary pair with beta - alpha = delta.
struct SlopePair {
    double delta = 0;
    double alpha = 0;
    double beta = 0;
};

/// Positive root of alpha^2 + (delta - 2) alpha - delta = 0.
inline SlopePair alpha_beta(double delta)
{
    if (!(delta > 0) || !std::isfinite(delta))
        throw std::domain_error("alpha_beta: delta must be a positive finite number");
    const double root = std::sqrt(delta * delta + 4);
    // The two forms are algebraically equal; each avoids cancellation on its side.
    const double alpha = delta <= 2 ? ((2 - delta) + root) / 2 : 2 * delta / (root + delta - 2);
    return {delta, alpha, alpha + delta};
}

struct ComplementReport {
    bool ok = true;
    /// Smallest integer in [1, up_to] not covered exactly once.
    std::optional<u64> value;
    bool duplicated = false; // otherwise missing
};

/// Every integer in [1, up_to] occurs exactly once across xs and ys.
/// Values outside [1, up_to] are ignored.
inline ComplementReport check_complementary(std::span<const u64> xs, std::span<const u64> ys, u64 up_to)
{
    std::vector<std::uint8_t> hits(up_to + 1, 0);
    auto add = [&](std::span<const u64> v) {
        for (u64 x : v)
            if (x >= 1 && x <= up_to && hits[x] < 2)
                ++hits[x];
    };
    add(xs);
    add(ys);
    ComplementReport r;
    for (u64 i = 1; i <= up_to; ++i)
        if (hits[i] != 1) {
            r.ok = false;
            r.value = i;
            r.duplicated = hits[i] > 1;
            break;
        }
    return r;
}

/// Extremes of seq[n] - slope * n over the sample.
struct DeviationReport {
    double slope = 0;
    double max_dev = 0;
    double min_dev = 0;
    std::size_t argmax = 0;
    std::size_t argmin = 0;
    std::size_t sample_count = 0;
};

inline DeviationReport deviation(std::span<const u64> seq, double slope)
{
    if (!(slope > 0))
        throw std::domain_error("deviation: slope must be positive");
    if (seq.empty())
        throw std::invalid_argument("deviation: empty sequence");
    DeviationReport r;
    r.slope = slope;
    r.sample_count = seq.size();
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const double d = static_cast<double>(seq[n]) - slope * static_cast<double>(n);
        if (n == 0 || d > r.max_dev) {
            r.max_dev = d;
            r.argmax = n;
        }
        if (n == 0 || d < r.min_dev) {
            r.min_dev = d;
            r.argmin = n;
        }
    }
    return r;
}

/// Extremes of y - slope * x over a list of points.
inline DeviationReport deviation_xy(std::span<const std::pair<u64, u64>> pts, double slope)
{
    if (pts.empty())
        throw std::invalid_argument("deviation_xy: empty point list");
    DeviationReport r;
    r.slope = slope;
    r.sample_count = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = static_cast<double>(pts[i].second) - slope * static_cast<double>(pts[i].first);
        if (i == 0 || d > r.max_dev) {
            r.max_dev = d;
            r.argmax = i;
        }
        if (i == 0 || d < r.min_dev) {
            r.min_dev = d;
            r.argmin = i;
        }
    }
    return r;
}

/// Exact integer band of b_n - a_n - n.
struct IntBand {
    i64 lo = 0;
    i64 hi = 0;
    std::size_t count = 0;
};

inline IntBand difference_band(const PSequence& s)
{
    IntBand b;
    b.count = s.pairs.size();
    for (std::size_t n = 0; n < s.pairs.size(); ++n) {
        const auto [a, y] = s.pairs[n];
        const i64 e = static_cast<i64>(y - a) - static_cast<i64>(n);
        b.lo = n == 0 ? e : std::min(b.lo, e);
        b.hi = n == 0 ? e : std::max(b.hi, e);
    }
    return b;
}

/// Exact integer band of b - floor(phi a) over upper pairs.
inline IntBand golden_band(const PSequence& s)
{
    IntBand b;
    b.count = s.pairs.size();
    for (std::size_t n = 0; n < s.pairs.size(); ++n) {
        const auto [a, y] = s.pairs[n];
        const i64 e = static_cast<i64>(y) - static_cast<i64>(floor_phi(a));
        b.lo = n == 0 ? e : std::min(b.lo, e);
        b.hi = n == 0 ? e : std::max(b.hi, e);
    }
    return b;
}

/// CSV rows n,a_n,b_n,b_n-a_n-n,b_n-phi*a_n.
inline void write_sequence_csv(std::ostream& os, const PSequence& s)
{
    os << "n,a_n,b_n,b_n-a_n-n,b_n-phi*a_n\n";
    char buf[32];
    for (std::size_t n = 0; n < s.pairs.size(); ++n) {
        const auto [a, b] = s.pairs[n];
        const i64 e = static_cast<i64>(b - a) - static_cast<i64>(n);
        std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(b) - kPhi * static_cast<double>(a));
        os << n << ',' << a << ',' << b << ',' << e << ',' << buf << '\n';
    }
}

} // namespace maharaja
