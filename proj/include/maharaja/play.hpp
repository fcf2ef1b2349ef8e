// play.hpp -- a terminal game against a perfect opponent

#pragma once

#include <cctype>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "game.hpp"
#include "oracle.hpp"

namespace maharaja {

/// Every unsigned integer in a line, in order.
inline std::vector<u64> integers_in(const std::string& line)
{
    std::vector<u64> out;
    std::optional<u64> cur;
    for (char ch : line) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            cur = cur.value_or(0) * 10 + static_cast<u64>(ch - '0');
        } else if (cur) {
            out.push_back(*cur);
            cur.reset();
        }
    }
    if (cur)
        out.push_back(*cur);
    return out;
}

inline std::string move_rule(const Ruleset& r)
{
    std::string s = "a move lowers one coordinate, or both by the same amount";
    for (const Jump& j : r.jumps())
        s += ", or jumps by (" + std::to_string(j.k) + "," + std::to_string(j.l) + ") or (" +
             std::to_string(j.l) + "," + std::to_string(j.k) + ")";
    s += "; no coordinate may increase";
    return s;
}

/// The engine's reply: an option labelled P when there is one, otherwise
/// the smallest step.
inline Position engine_move(Position p, const Ruleset& r, const std::function<Outcome(Position)>& outcome)
{
    const auto opts = moves_from(p, r);
    for (const Position& q : opts)
        if (outcome(q) == Outcome::P)
            return q;
    return p.x > 0 ? Position{p.x - 1, p.y} : Position{p.x, p.y - 1};
}

enum class Winner { Human, Engine, None };

/// Alternates human and engine moves from `start` until (0,0) or end of input.
inline Winner play_session(std::istream& in, std::ostream& out, const Ruleset& r, Position start,
                           bool human_first, const std::function<Outcome(Position)>& outcome)
{
    Position cur = start;
    bool human = human_first;
    out << "Game " << r.id() << ", start " << to_string(cur) << ". The player who reaches (0,0) wins.\n";
    if (is_terminal(cur)) {
        out << "No move is possible from (0,0); " << (human ? "the engine" : "you") << " win"
            << (human ? "s" : "") << ".\n";
        return human ? Winner::Engine : Winner::Human;
    }
    while (!is_terminal(cur)) {
        if (human) {
            out << "Position " << to_string(cur) << ". Your move (x,y): " << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                out << "\nInput closed, game abandoned.\n";
                return Winner::None;
            }
            const auto nums = integers_in(line);
            std::optional<Position> to;
            if (nums.size() == 2) {
                to = Position{nums[0], nums[1]};
            } else if (nums.size() == 4) {
                if (Position{nums[0], nums[1]} != cur) {
                    out << "The game is at " << to_string(cur) << ", not " << to_string({nums[0], nums[1]})
                        << ".\n";
                    continue;
                }
                to = Position{nums[2], nums[3]};
            } else {
                out << "Enter the target position as x,y.\n";
                continue;
            }
            if (!is_option(cur, *to, r)) {
                out << "Illegal move " << to_string(cur) << " -> " << to_string(*to) << ": " << move_rule(r)
                    << ".\n";
                continue;
            }
            cur = *to;
        } else {
            cur = engine_move(cur, r, outcome);
            out << "Engine moves to " << to_string(cur) << ".\n";
        }
        human = !human;
    }
    // The side that just moved reached (0,0).
    const bool human_won = !human;
    out << (human_won ? "You win.\n" : "The engine wins.\n");
    return human_won ? Winner::Human : Winner::Engine;
}

} // namespace maharaja
