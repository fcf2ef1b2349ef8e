// game.hpp -- positions, rulesets and move generation for Wythoff Nim and
// its jump-extended relatives

#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "golden.hpp"

namespace maharaja {

/// A cell of the quarter-infinite board; x is the column, y the row.
struct Position {
    u64 x = 0;
    u64 y = 0;

    constexpr auto operator<=>(const Position&) const = default;

    constexpr Position mirrored() const noexcept { return {y, x}; }
};

inline std::string to_string(Position p)
{
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

/// An adjoined move (k,l), always applied together with its mirror (l,k).
/// Stored normalized with k < l.
struct Jump {
    u64 k = 0;
    u64 l = 0;

    constexpr auto operator<=>(const Jump&) const = default;
};

/// Wythoff's queen moves plus a finite set of symmetric jumps.
///
/// The rook and bishop move families are implicit. An empty jump set is
/// Wythoff Nim, {(1,2)} is Maharaja Nim and {(2,3)} is (2,3)-Maharaja Nim.
class Ruleset {
public:
    Ruleset() = default;

    /// Throws `std::invalid_argument` for k == l or a zero offset.
    explicit Ruleset(std::vector<std::pair<u64, u64>> pairs)
    {
        for (auto [k, l] : pairs) {
            if (k == 0 || l == 0)
                throw std::invalid_argument("ruleset: jump offsets must be positive");
            if (k == l)
                throw std::invalid_argument("ruleset: jump (k,k) duplicates a bishop move");
            if (k > l)
                std::swap(k, l);
            jumps_.push_back({k, l});
        }
        std::sort(jumps_.begin(), jumps_.end());
        jumps_.erase(std::unique(jumps_.begin(), jumps_.end()), jumps_.end());
    }

    static Ruleset wythoff() { return Ruleset{}; }
    static Ruleset maharaja() { return Ruleset({{1, 2}}); }
    static Ruleset klm(u64 k, u64 l) { return Ruleset({{k, l}}); }

    std::span<const Jump> jumps() const noexcept { return jumps_; }

    /// Largest coordinate change of any jump (0 for Wythoff Nim).
    u64 reach() const noexcept
    {
        u64 r = 0;
        for (const auto& j : jumps_)
            r = std::max(r, j.l);
        return r;
    }

    /// Canonical identifier: "wythoff", "maharaja" or "klm:k,l[;k2,l2...]".
    std::string id() const
    {
        if (jumps_.empty())
            return "wythoff";
        if (jumps_.size() == 1 && jumps_[0] == Jump{1, 2})
            return "maharaja";
        std::string s = "klm:";
        for (std::size_t i = 0; i < jumps_.size(); ++i) {
            if (i)
                s += ';';
            s += std::to_string(jumps_[i].k) + "," + std::to_string(jumps_[i].l);
        }
        return s;
    }

    /// Parses a canonical id or one of the aliases "w", "m", "23m".
    static Ruleset parse(std::string_view id)
    {
        if (id == "wythoff" || id == "w")
            return wythoff();
        if (id == "maharaja" || id == "m")
            return maharaja();
        if (id == "23m")
            return klm(2, 3);
        if (!id.starts_with("klm:"))
            throw std::invalid_argument("unknown game id: " + std::string(id));
        std::vector<std::pair<u64, u64>> pairs;
        std::string_view rest = id.substr(4);
        while (!rest.empty()) {
            const auto semi = rest.find(';');
            const std::string_view item = rest.substr(0, semi);
            const auto comma = item.find(',');
            if (comma == std::string_view::npos)
                throw std::invalid_argument("malformed jump in game id: " + std::string(id));
            pairs.emplace_back(parse_u64(item.substr(0, comma), id),
                               parse_u64(item.substr(comma + 1), id));
            rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        }
        if (pairs.empty())
            throw std::invalid_argument("klm game id needs at least one jump");
        return Ruleset(std::move(pairs));
    }

    bool operator==(const Ruleset&) const = default;

private:
    static u64 parse_u64(std::string_view s, std::string_view id)
    {
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw std::invalid_argument("malformed number in game id: " + std::string(id));
        return v;
    }

    std::vector<Jump> jumps_;
};

inline bool is_terminal(Position p) noexcept { return p.x == 0 && p.y == 0; }

/// Calls `fn(q)` for every option q of p, one move family at a time.
/// Each option is visited exactly once.
template <typename Fn>
void for_each_move(Position p, const Ruleset& r, Fn&& fn)
{
    for (u64 t = 1; t <= p.x; ++t)
        fn(Position{p.x - t, p.y});
    for (u64 t = 1; t <= p.y; ++t)
        fn(Position{p.x, p.y - t});
    for (u64 t = 1; t <= std::min(p.x, p.y); ++t)
        fn(Position{p.x - t, p.y - t});
    for (const Jump& j : r.jumps()) {
        if (p.x >= j.k && p.y >= j.l)
            fn(Position{p.x - j.k, p.y - j.l});
        if (p.x >= j.l && p.y >= j.k)
            fn(Position{p.x - j.l, p.y - j.k});
    }
}

/// All options of p, sorted.
inline std::vector<Position> moves_from(Position p, const Ruleset& r)
{
    std::vector<Position> out;
    out.reserve(2 * (p.x + p.y) + 2 * r.jumps().size());
    for_each_move(p, r, [&](Position q) { out.push_back(q); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Whether `to` is reachable from `from` in one move, without enumerating.
inline bool is_option(Position from, Position to, const Ruleset& r) noexcept
{
    if (to.x > from.x || to.y > from.y || to == from)
        return false;
    const u64 dx = from.x - to.x;
    const u64 dy = from.y - to.y;
    if (dx == 0 || dy == 0 || dx == dy)
        return true;
    for (const Jump& j : r.jumps())
        if ((dx == j.k && dy == j.l) || (dx == j.l && dy == j.k))
            return true;
    return false;
}

} // namespace maharaja
