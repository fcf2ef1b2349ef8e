// oracle.hpp -- brute-force P/N labelling of bounded boards

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "game.hpp"

namespace maharaja {

enum class Outcome : std::uint8_t { P = 1, N = 2 };

inline char to_char(Outcome o) noexcept { return o == Outcome::P ? 'P' : 'N'; }

/// Thrown when a grid would exceed the configured memory budget.
class CapacityError : public std::runtime_error {
public:
    CapacityError(u64 bound, u64 bytes, u64 budget)
        : std::runtime_error("grid bound " + std::to_string(bound) + " needs " +
                             std::to_string(bytes) + " bytes, budget is " +
                             std::to_string(budget)),
          bound_(bound), bytes_(bytes), budget_(budget)
    {
    }

    u64 bound() const noexcept { return bound_; }
    u64 bytes() const noexcept { return bytes_; }
    u64 budget() const noexcept { return budget_; }

private:
    u64 bound_, bytes_, budget_;
};

inline constexpr u64 kDefaultMemoryBudget = u64{1} << 30;

/// Bytes of label storage for a bound-N grid: ceil(N^2 / 4).
/// The per-column row table adds 8N bytes on top.
constexpr u64 grid_bytes(u64 bound) noexcept { return (bound * bound + 3) / 4; }

inline constexpr u64 kNoRow = std::numeric_limits<u64>::max();

/// P/N labels of every position with 0 <= x, y < bound.
///
/// Labels are 2 bits per cell, row-major. `p_row(x)` gives the single
/// P-position of column x when it lies inside the grid.
class OutcomeGrid {
public:
    OutcomeGrid(Ruleset r, u64 bound)
        : ruleset_(std::move(r)), bound_(bound),
          cells_(static_cast<std::size_t>(grid_bytes(bound)), std::uint8_t{0xAA}),
          col_row_(static_cast<std::size_t>(bound), kNoRow)
    {
    }

    const Ruleset& ruleset() const noexcept { return ruleset_; }
    u64 bound() const noexcept { return bound_; }

    Outcome at(u64 x, u64 y) const
    {
        if (x >= bound_ || y >= bound_)
            throw std::out_of_range("grid: " + to_string(Position{x, y}) + " outside bound " +
                                    std::to_string(bound_));
        const u64 i = y * bound_ + x;
        return static_cast<Outcome>((cells_[i >> 2] >> ((i & 3) * 2)) & 3);
    }

    Outcome at(Position p) const { return at(p.x, p.y); }

    /// Row of the P-position in column x, or kNoRow if it is not inside the grid.
    u64 p_row(u64 x) const noexcept { return x < bound_ ? col_row_[x] : kNoRow; }

    /// Packed cells, little-endian within each byte.
    const std::vector<std::uint8_t>& raw() const noexcept { return cells_; }

    void set(u64 x, u64 y, Outcome o)
    {
        const u64 i = y * bound_ + x;
        auto& byte = cells_[i >> 2];
        const unsigned shift = (i & 3) * 2;
        byte = static_cast<std::uint8_t>((byte & ~(3u << shift)) | (static_cast<unsigned>(o) << shift));
        if (o == Outcome::P)
            col_row_[x] = y;
    }

    bool operator==(const OutcomeGrid& o) const
    {
        return ruleset_ == o.ruleset_ && bound_ == o.bound_ && cells_ == o.cells_;
    }

    /// Rebuilds the per-column row table from the packed cells.
    void reindex()
    {
        std::fill(col_row_.begin(), col_row_.end(), kNoRow);
        for (u64 y = 0; y < bound_; ++y)
            for (u64 x = 0; x < bound_; ++x)
                if (at(x, y) == Outcome::P && col_row_[x] == kNoRow)
                    col_row_[x] = y;
    }

    std::vector<std::uint8_t>& raw_mut() noexcept { return cells_; }

private:
    Ruleset ruleset_;
    u64 bound_;
    std::vector<std::uint8_t> cells_;
    std::vector<u64> col_row_;
};

/// Retrograde sweep over columns then rows. Each column's P-position is the
/// lowest cell whose row, diagonal and jump predecessors hold no P-position.
inline OutcomeGrid compute_grid(const Ruleset& r, u64 bound, u64 memory_budget = kDefaultMemoryBudget)
{
    if (bound == 0)
        throw std::invalid_argument("compute_grid: bound must be positive");
    if (bound > (u64{1} << 32) || grid_bytes(bound) + 8 * bound > memory_budget)
        throw CapacityError(bound, bound > (u64{1} << 32) ? ~u64{0} : grid_bytes(bound) + 8 * bound,
                            memory_budget);

    OutcomeGrid g(r, bound);
    std::vector<bool> row_used(bound, false);
    std::vector<bool> diag_used(2 * bound, false); // index y - x + bound
    std::vector<u64> col_row(bound, kNoRow);
    u64 first_free = 0;

    for (u64 x = 0; x < bound; ++x) {
        while (first_free < bound && row_used[first_free])
            ++first_free;
        for (u64 y = first_free; y < bound; ++y) {
            if (row_used[y] || diag_used[y + bound - x])
                continue;
            bool attacked = false;
            for (const Jump& j : r.jumps()) {
                if (x >= j.k && y >= j.l && col_row[x - j.k] == y - j.l)
                    attacked = true;
                if (x >= j.l && y >= j.k && col_row[x - j.l] == y - j.k)
                    attacked = true;
            }
            if (attacked)
                continue;
            col_row[x] = y;
            row_used[y] = true;
            diag_used[y + bound - x] = true;
            g.set(x, y, Outcome::P);
            break;
        }
    }
    return g;
}

/// Upper P-positions (a_n, b_n), b_n >= a_n, sorted by a.
struct PSequence {
    std::vector<std::pair<u64, u64>> pairs;
    /// First column without a P-position inside the grid; every column
    /// below it is fully resolved.
    u64 safe_cutoff = 0;
};

inline u64 safe_cutoff(const OutcomeGrid& g) noexcept
{
    u64 c = 0;
    while (c < g.bound() && g.p_row(c) != kNoRow)
        ++c;
    return c;
}

inline PSequence upper_p_sequence(const OutcomeGrid& g)
{
    PSequence s;
    s.safe_cutoff = safe_cutoff(g);
    for (u64 a = 0; a < s.safe_cutoff; ++a) {
        const u64 b = g.p_row(a);
        if (b >= a)
            s.pairs.emplace_back(a, b);
    }
    return s;
}

struct StructureReport {
    u64 safe_cutoff = 0;
    /// Rows and columns below safe_cutoff whose P count differs from 1.
    std::vector<std::pair<u64, u64>> bad_rows;    // (row, count)
    std::vector<std::pair<u64, u64>> bad_columns; // (column, count)
    /// Diagonals y - x = C with more than one P-position anywhere in the grid.
    std::vector<std::pair<i64, u64>> crowded_diagonals;
    /// Safe diagonals |C| < diagonal_cutoff with no P-position.
    std::vector<i64> empty_diagonals;
    i64 diagonal_cutoff = 0;
    u64 pair_count = 0;

    /// Prefix n (pairs 0..n) satisfies {b_i - a_i} = {0..n}.
    bool coverage_every_prefix = true;
    std::optional<u64> last_covered_prefix;
    std::vector<u64> uncovered_prefixes;
    /// Largest number of pairs between consecutive covered prefixes.
    u64 coverage_max_gap = 0;

    i64 band_lo = 0; // min of b_n - a_n - n
    i64 band_hi = 0; // max of b_n - a_n - n

    bool rows_columns_ok() const noexcept { return bad_rows.empty() && bad_columns.empty(); }
    bool diagonals_ok() const noexcept { return crowded_diagonals.empty(); }
};

inline StructureReport check_structure(const OutcomeGrid& g)
{
    StructureReport rep;
    const u64 N = g.bound();
    rep.safe_cutoff = safe_cutoff(g);

    std::vector<u64> rows(N, 0), cols(N, 0), diags(2 * N, 0);
    for (u64 y = 0; y < N; ++y)
        for (u64 x = 0; x < N; ++x)
            if (g.at(x, y) == Outcome::P) {
                ++rows[y];
                ++cols[x];
                ++diags[y + N - x];
            }
    for (u64 i = 0; i < rep.safe_cutoff; ++i) {
        if (rows[i] != 1)
            rep.bad_rows.emplace_back(i, rows[i]);
        if (cols[i] != 1)
            rep.bad_columns.emplace_back(i, cols[i]);
    }
    for (u64 d = 0; d < 2 * N; ++d)
        if (diags[d] > 1)
            rep.crowded_diagonals.emplace_back(static_cast<i64>(d) - static_cast<i64>(N), diags[d]);

    const PSequence seq = upper_p_sequence(g);
    rep.pair_count = seq.pairs.size();
    // Prefix 0..n covers {0..n} iff its n+1 diffs are distinct and all <= n.
    std::vector<bool> seen;
    u64 max_diff = 0;
    u64 duplicates = 0;
    u64 last_cov = 0;
    bool any_cov = false;
    for (u64 n = 0; n < seq.pairs.size(); ++n) {
        const auto [a, b] = seq.pairs[n];
        const u64 d = b - a;
        const i64 e = static_cast<i64>(d) - static_cast<i64>(n);
        rep.band_lo = n == 0 ? e : std::min(rep.band_lo, e);
        rep.band_hi = n == 0 ? e : std::max(rep.band_hi, e);
        if (seen.size() <= d)
            seen.resize(d + 1, false);
        if (seen[d])
            ++duplicates;
        seen[d] = true;
        max_diff = std::max(max_diff, d);
        if (duplicates == 0 && max_diff <= n) {
            if (any_cov)
                rep.coverage_max_gap = std::max(rep.coverage_max_gap, n - last_cov);
            else
                rep.coverage_max_gap = std::max(rep.coverage_max_gap, n + 1);
            last_cov = n;
            any_cov = true;
            rep.last_covered_prefix = n;
        } else {
            rep.coverage_every_prefix = false;
            if (rep.uncovered_prefixes.size() < 64)
                rep.uncovered_prefixes.push_back(n);
        }
    }

    const i64 lo = std::min<i64>(rep.band_lo, 0);
    rep.diagonal_cutoff = std::max<i64>(0, static_cast<i64>(rep.pair_count) + lo);
    for (i64 c = 0; c < rep.diagonal_cutoff && c < static_cast<i64>(N); ++c) {
        if (diags[static_cast<u64>(c + static_cast<i64>(N))] == 0)
            rep.empty_diagonals.push_back(c);
        if (c > 0 && diags[static_cast<u64>(static_cast<i64>(N) - c)] == 0)
            rep.empty_diagonals.push_back(-c);
    }
    return rep;
}

// Grid cache files: "grid v1 ruleset=<id> bound=<N>\n" then the packed cells.

inline void save_grid(std::ostream& os, const OutcomeGrid& g)
{
    os << "grid v1 ruleset=" << g.ruleset().id() << " bound=" << g.bound() << '\n';
    os.write(reinterpret_cast<const char*>(g.raw().data()), static_cast<std::streamsize>(g.raw().size()));
    if (!os)
        throw std::runtime_error("save_grid: write failed");
}

inline OutcomeGrid load_grid(std::istream& is, u64 memory_budget = kDefaultMemoryBudget)
{
    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error("load_grid: missing header");
    std::istringstream hs(header);
    std::string magic, version, rs, bd;
    hs >> magic >> version >> rs >> bd;
    if (magic != "grid" || version != "v1" || !rs.starts_with("ruleset=") || !bd.starts_with("bound="))
        throw std::runtime_error("load_grid: malformed header: " + header);
    const Ruleset r = Ruleset::parse(rs.substr(8));
    u64 bound = 0;
    try {
        bound = std::stoull(bd.substr(6));
    } catch (const std::exception&) {
        throw std::runtime_error("load_grid: malformed bound: " + bd);
    }
    if (bound == 0)
        throw std::runtime_error("load_grid: bound must be positive");
    if (grid_bytes(bound) + 8 * bound > memory_budget)
        throw CapacityError(bound, grid_bytes(bound) + 8 * bound, memory_budget);
    OutcomeGrid g(r, bound);
    auto& cells = g.raw_mut();
    is.read(reinterpret_cast<char*>(cells.data()), static_cast<std::streamsize>(cells.size()));
    if (static_cast<std::size_t>(is.gcount()) != cells.size())
        throw std::runtime_error("load_grid: truncated cell data");
    g.reindex();
    return g;
}

} // namespace maharaja
