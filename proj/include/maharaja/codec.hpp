// codec.hpp -- the column bit-string of a game and its dictionary process

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dictionary.hpp"
#include "oracle.hpp"

namespace maharaja {

/// Bit c (absolute column start + i) is '0' when column c holds an upper
/// P-position and '1' when it holds a lower one.
struct BitString {
    Ruleset ruleset;
    u64 start = 0;
    Bits bits;
};

/// Columns below the grid's safe cutoff.
inline BitString bitstring_from_grid(const OutcomeGrid& g)
{
    BitString b{g.ruleset(), 0, {}};
    const u64 cut = safe_cutoff(g);
    b.bits.reserve(cut);
    for (u64 c = 0; c < cut; ++c)
        b.bits.push_back(g.p_row(c) >= c ? '0' : '1');
    return b;
}

/// zeros[i] = number of '0' in bits[0, i).
inline std::vector<u64> zero_prefix(std::string_view bits)
{
    std::vector<u64> z(bits.size() + 1, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        z[i + 1] = z[i] + (bits[i] == '0');
    return z;
}

inline u64 count_zeros(std::string_view bits) noexcept
{
    return static_cast<u64>(std::count(bits.begin(), bits.end(), '0'));
}

/// Translate length of a word: its length plus its number of zeros.
inline u64 translate_length(std::string_view word) noexcept { return word.size() + count_zeros(word); }

inline void save_bitstring(std::ostream& os, const BitString& b)
{
    os << "bits v1 ruleset=" << b.ruleset.id() << " start=" << b.start << " len=" << b.bits.size() << '\n'
       << b.bits << '\n';
}

inline BitString load_bitstring(std::istream& is)
{
    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error("load_bitstring: missing header");
    std::istringstream hs(header);
    std::string magic, version, rs, st, ln;
    hs >> magic >> version >> rs >> st >> ln;
    if (magic != "bits" || version != "v1" || !rs.starts_with("ruleset=") || !st.starts_with("start=") ||
        !ln.starts_with("len="))
        throw std::runtime_error("load_bitstring: malformed header: " + header);
    BitString b;
    b.ruleset = Ruleset::parse(rs.substr(8));
    b.start = std::stoull(st.substr(6));
    const u64 len = std::stoull(ln.substr(4));
    std::string body, line;
    while (std::getline(is, line))
        for (char c : line)
            if (c == '0' || c == '1')
                body.push_back(c);
            else if (c != ' ' && c != '\r' && c != '\t')
                throw std::runtime_error("load_bitstring: non-binary character in body");
    if (body.size() != len)
        throw std::runtime_error("load_bitstring: body has " + std::to_string(body.size()) +
                                 " bits, header says " + std::to_string(len));
    b.bits = std::move(body);
    return b;
}

/// Running state of the upper pairs met so far, column by column.
struct SectorState {
    u64 n = 0;                   // upper pairs so far
    std::optional<u64> a_last;   // last upper column
    std::vector<bool> diffs_used;
    u64 max_diff = 0;
    u64 duplicates = 0;
    /// Column holding each used difference.
    std::vector<u64> diff_column;
    /// The last column fed ends a perfect sector.
    bool perfect = false;

    /// diffs_used == {0, ..., n-1}.
    bool covered() const noexcept { return duplicates == 0 && (n == 0 || max_diff + 1 == n); }
};

/// Feeds columns in order and reports sector boundaries.
class SectorTracker {
public:
    const SectorState& state() const noexcept { return st_; }

    /// Whether an upper pair (c, row) would start a relaxed sector: the
    /// differences so far are exactly {0..n-1} and row - c == n.
    bool relaxed_start(u64 c, u64 row) const noexcept { return row >= c && st_.covered() && row - c == st_.n; }

    /// Adds column c with P-position row `row`. Returns true when a perfect
    /// sector begins right after c: the differences are {0..n-1} and the
    /// pair with difference n-1 is not in column c.
    bool feed(u64 c, u64 row)
    {
        if (row >= c) {
            const u64 d = row - c;
            if (st_.diffs_used.size() <= d) {
                st_.diffs_used.resize(d + 1, false);
                st_.diff_column.resize(d + 1, kNoRow);
            }
            if (st_.diffs_used[d])
                ++st_.duplicates;
            st_.diffs_used[d] = true;
            st_.diff_column[d] = c;
            st_.max_diff = std::max(st_.max_diff, d);
            ++st_.n;
            st_.a_last = c;
        }
        st_.perfect = st_.n > 0 && st_.covered() && st_.diff_column[st_.n - 1] != c;
        return st_.perfect;
    }

private:
    SectorState st_;
};

enum class LearnMode { Maharaja, KlmRelaxed };

/// One dictionary step: `word` read at consume_start, `translate` written at append_start.
struct TraceEntry {
    Bits word;
    Bits translate;
    u64 consume_start = 0;
    u64 append_start = 0;

    bool operator==(const TraceEntry&) const = default;
};

struct LearnResult {
    Dictionary dictionary;
    std::vector<TraceEntry> trace;
    /// Word boundaries from first_start on, including trailing incomplete ones.
    std::vector<u64> boundaries;
    /// Oracle bits before the first translate: bits[0, append_start of first word).
    Bits seed;
    u64 first_start = 0;
    u64 safe_length = 0;
    /// Words met with two different translates: (word, first, other, column).
    struct Conflict {
        Bits word, first, other;
        u64 column;
    };
    std::vector<Conflict> conflicts;
    bool found_boundary = false;
    std::string note;
};

/// Word start columns of the whole bit-string, before interference trimming.
inline std::vector<u64> sector_starts(const OutcomeGrid& g, LearnMode mode)
{
    const u64 cut = safe_cutoff(g);
    std::vector<u64> starts;
    SectorTracker tr;
    if (mode == LearnMode::Maharaja) {
        for (u64 c = 0; c < cut; ++c)
            if (tr.feed(c, g.p_row(c)) && c + 1 < cut)
                starts.push_back(c + 1);
        return starts;
    }
    std::vector<u64> qual;
    for (u64 c = 0; c < cut; ++c) {
        const u64 row = g.p_row(c);
        if (row >= c && tr.relaxed_start(c, row))
            qual.push_back(c);
        tr.feed(c, row);
    }
    // A relaxed word runs to the last upper column before the next start;
    // each lower column after that is a word "1" of its own.
    for (std::size_t i = 0; i + 1 < qual.size(); ++i) {
        starts.push_back(qual[i]);
        u64 last = qual[i];
        for (u64 c = qual[i]; c < qual[i + 1]; ++c)
            if (g.p_row(c) >= c)
                last = c;
        for (u64 c = last + 1; c < qual[i + 1]; ++c)
            starts.push_back(c);
    }
    if (!qual.empty())
        starts.push_back(qual.back());
    return starts;
}

/// Segments the oracle bit-string into words and reads each translate at
/// the anchor s + (zeros before s).
inline LearnResult learn_dictionary(const OutcomeGrid& g, LearnMode mode)
{
    LearnResult res;
    const BitString bs = bitstring_from_grid(g);
    const Bits& B = bs.bits;
    res.safe_length = B.size();
    const auto zeros = zero_prefix(B);
    const std::vector<u64> starts = sector_starts(g, mode);
    const MatchPolicy policy = mode == LearnMode::Maharaja ? MatchPolicy::PrefixFree : MatchPolicy::LongestMatch;
    if (starts.size() < 2) {
        res.note = "no complete word inside the safe range of " + std::to_string(B.size()) + " columns";
        res.dictionary = Dictionary({}, policy);
        return res;
    }
    res.found_boundary = true;

    // Early words whose translate would overlap themselves are interference.
    std::size_t first = 0;
    for (std::size_t i = 0; i + 1 < starts.size(); ++i)
        if (starts[i] + zeros[starts[i]] < starts[i + 1])
            first = i + 1;
    while (first + 1 < starts.size() && B[starts[first]] != '0')
        ++first;
    if (first + 1 >= starts.size()) {
        res.note = "no complete word after the initial interference";
        res.dictionary = Dictionary({}, policy);
        return res;
    }
    res.first_start = starts[first];
    res.seed = B.substr(0, starts[first] + zeros[starts[first]]);
    res.boundaries.assign(starts.begin() + static_cast<std::ptrdiff_t>(first), starts.end());

    std::vector<Entry> entries;
    std::map<Bits, std::size_t> index;
    for (std::size_t i = first; i + 1 < starts.size(); ++i) {
        const u64 s = starts[i], e = starts[i + 1];
        Bits w = B.substr(s, e - s);
        const u64 t = s + zeros[s];
        const u64 L = translate_length(w);
        if (t + L > B.size()) {
            res.note = "translates past column " + std::to_string(B.size()) + " not observed";
            break;
        }
        Bits tr = B.substr(t, L);
        res.trace.push_back({w, tr, s, t});
        auto it = index.find(w);
        if (it == index.end()) {
            index.emplace(w, entries.size());
            entries.push_back({std::move(w), std::move(tr)});
        } else if (entries[it->second].translate != tr) {
            res.conflicts.push_back({w, entries[it->second].translate, tr, s});
        }
    }
    res.dictionary = Dictionary(std::move(entries), policy);
    return res;
}

inline Dictionary maharaja_dictionary()
{
    return Dictionary({{"1", "0"},
                       {"01", "100"},
                       {"00100", "100101100"},
                       {"00110", "10010100"},
                       {"000100", "10010110100"},
                       {"001110", "100100100"},
                       {"0010110", "10010011000"},
                       {"00000100", "100101100111000"},
                       {"000010010", "1001001111000100"},
                       {"0000000", "10010110110100"},
                       {"0010100", "100100110100"},
                       {"0011110", "1001000100"},
                       {"00000010", "100101101100100"},
                       {"00001000", "100100111100100"}},
                      MatchPolicy::PrefixFree);
}

/// The words observed in the first 20000 bits; the remaining five are not.
inline constexpr std::array<std::string_view, 9> kObservedMaharajaWords = {
    "1", "01", "00100", "00110", "000100", "001110", "0010110", "00000100", "000010010"};

inline Dictionary dictionary_23()
{
    return Dictionary({{"0", "10"}, {"1", "0"}, {"01000", "100011100"}, {"01010", "10001100"}},
                      MatchPolicy::LongestMatch);
}

struct Stall {
    u64 head = 0;
    /// Up to 20 bits after the head.
    Bits context;
};

struct GenerateResult {
    Bits bits;
    std::vector<TraceEntry> trace;
    std::optional<Stall> stall;
    u64 head = 0;
};

/// Runs the dictionary process from `seed` with the read head at `head`
/// until the string holds at least `target` bits or no word matches.
inline GenerateResult generate_bitstring(const Dictionary& d, const Bits& seed, u64 head, u64 target,
                                         std::optional<u64> max_steps = std::nullopt)
{
    if (seed.empty())
        throw std::invalid_argument("generate_bitstring: empty seed");
    if (head >= seed.size())
        throw std::invalid_argument("generate_bitstring: read head beyond seed");
    if (!is_bits(seed))
        throw std::invalid_argument("generate_bitstring: seed is not binary");
    GenerateResult r;
    r.bits = seed;
    r.bits.reserve(static_cast<std::size_t>(std::max<u64>(target, seed.size()) + d.max_translate_length()));
    u64 steps = 0;
    while (r.bits.size() < target && (!max_steps || steps < *max_steps)) {
        const auto m = d.match_at(r.bits, head);
        const bool short_read = r.bits.size() - head < d.max_word_length() && d.could_extend(r.bits, head);
        if (!m || (short_read && d.policy() == MatchPolicy::LongestMatch)) {
            r.stall = Stall{head, r.bits.substr(head, 20)};
            break;
        }
        const Entry& e = d.entries()[*m];
        r.trace.push_back({e.word, e.translate, head, r.bits.size()});
        r.bits += e.translate;
        head += e.word.size();
        ++steps;
    }
    r.head = head;
    return r;
}

struct VerificationReport {
    bool all_matched = true;
    std::optional<u64> unmatched_at;
    /// Words whose translate disagrees with the reference: (consume, append).
    std::vector<std::pair<u64, u64>> mismatches;
    /// Words whose translate does not start where the previous one ended.
    u64 gaps = 0;
    std::vector<u64> counts; // per dictionary entry
    std::vector<std::size_t> unused;
    u64 words_checked = 0;
    /// Reading stopped here because the next translate leaves the reference.
    u64 checked_up_to = 0;

    bool ok() const noexcept { return all_matched && mismatches.empty() && gaps == 0 && words_checked > 0; }
};

/// Reads the reference from read_start and compares every translate with
/// the reference at s + (zeros before s).
inline VerificationReport verify_dictionary(const Dictionary& d, const BitString& reference, u64 read_start)
{
    if (reference.start != 0)
        throw std::invalid_argument("verify_dictionary: reference must start at column 0");
    const Bits& B = reference.bits;
    const auto zeros = zero_prefix(B);
    VerificationReport rep;
    rep.counts.assign(d.size(), 0);
    u64 head = read_start;
    std::optional<u64> expected_next;
    while (head < B.size()) {
        if (head + d.max_word_length() > B.size())
            break;
        const auto m = d.match_at(B, head);
        if (!m) {
            rep.all_matched = false;
            rep.unmatched_at = head;
            break;
        }
        const Entry& e = d.entries()[*m];
        const u64 t = head + zeros[head];
        if (t + e.translate.size() > B.size())
            break;
        if (B.compare(t, e.translate.size(), e.translate) != 0)
            rep.mismatches.emplace_back(head, t);
        if (expected_next && *expected_next != t)
            ++rep.gaps;
        expected_next = t + e.translate.size();
        ++rep.counts[*m];
        ++rep.words_checked;
        head += e.word.size();
    }
    rep.checked_up_to = head;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (rep.counts[i] == 0)
            rep.unused.push_back(i);
    return rep;
}

/// The eleven words that never begin at a word start of the Maharaja string.
inline constexpr std::array<std::string_view, 11> kExcludedWords = {
    "00000011", "00000101", "0000011", "000010011", "0000101", "000011",
    "000101",   "00011",    "0010101", "0010111",   "0011111"};

struct ExclusionReport {
    /// (excluded word index, word start) for each occurrence.
    std::vector<std::pair<std::size_t, u64>> occurrences;
    /// Human-readable static rule violations.
    std::vector<std::string> static_violations;
    u64 word_starts_checked = 0;

    bool ok() const noexcept { return occurrences.empty() && static_violations.empty(); }
};

inline std::size_t longest_run(std::string_view s, char c) noexcept
{
    std::size_t best = 0, cur = 0;
    for (char x : s) {
        cur = x == c ? cur + 1 : 0;
        best = std::max(best, cur);
    }
    return best;
}

/// Static translate rules: at most three consecutive 0s, a leading 1 means
/// a leading "100", no "11111", every translate ends in 0 and every
/// translate other than "0" ends in "00".
inline std::vector<std::string> static_translate_violations(const Dictionary& d)
{
    std::vector<std::string> v;
    for (const Entry& e : d.entries()) {
        const std::string& t = e.translate;
        const std::string tag = e.word + " -> " + t + ": ";
        if (longest_run(t, '0') > 3)
            v.push_back(tag + "more than three consecutive 0s");
        if (t.starts_with('1') && !t.starts_with("100"))
            v.push_back(tag + "begins with 1 but not with 100");
        if (t.find("11111") != std::string::npos)
            v.push_back(tag + "contains 11111");
        if (!t.ends_with('0'))
            v.push_back(tag + "does not end in 0");
        if (t != "0" && !t.ends_with("00"))
            v.push_back(tag + "does not end in 00");
    }
    return v;
}

inline ExclusionReport check_exclusions(const Dictionary& d, const Bits& generated,
                                        const std::vector<TraceEntry>& trace)
{
    ExclusionReport rep;
    rep.static_violations = static_translate_violations(d);
    for (const TraceEntry& t : trace) {
        ++rep.word_starts_checked;
        for (std::size_t k = 0; k < kExcludedWords.size(); ++k) {
            const auto& w = kExcludedWords[k];
            if (t.consume_start + w.size() <= generated.size() &&
                generated.compare(t.consume_start, w.size(), w) == 0)
                rep.occurrences.emplace_back(k, t.consume_start);
        }
    }
    return rep;
}

/// Per-entry counts of words that begin below `limit`.
inline std::vector<u64> census(const Dictionary& d, const std::vector<TraceEntry>& trace, u64 limit)
{
    std::vector<u64> c(d.size(), 0);
    for (const TraceEntry& t : trace)
        if (t.consume_start < limit)
            if (auto i = d.find(t.word))
                ++c[*i];
    return c;
}

/// Row offsets, relative to the translate start, of the upper P-positions
/// of a word's columns. Works inside the word alone: rows and diagonals
/// already taken by the word, jumps between the word's own positions, and
/// rows at or above the column offset. Returns nullopt when some column
/// has no admissible row or lands on a '0' of the translate.
inline std::optional<std::vector<std::pair<u64, u64>>> local_pattern(std::string_view word,
                                                                     std::string_view translate,
                                                                     const Ruleset& r)
{
    std::vector<std::pair<u64, u64>> placed; // (column offset, row offset)
    std::vector<bool> row_used(translate.size(), false);
    std::vector<bool> diag_used(translate.size() + 1, false);
    for (u64 c = 0; c < word.size(); ++c) {
        if (word[c] != '0')
            continue;
        std::optional<u64> found;
        for (u64 y = c; y < translate.size(); ++y) {
            if (row_used[y] || diag_used[y - c])
                continue;
            bool attacked = false;
            for (const auto& [pc, pr] : placed)
                for (const Jump& j : r.jumps())
                    if ((c - pc == j.k && y >= pr && y - pr == j.l) || (c - pc == j.l && y >= pr && y - pr == j.k))
                        attacked = true;
            if (attacked)
                continue;
            found = y;
            break;
        }
        if (!found || translate[*found] != '1')
            return std::nullopt;
        placed.emplace_back(c, *found);
        row_used[*found] = true;
        diag_used[*found - c] = true;
    }
    return placed;
}

/// local_pattern of every entry, indexed like the dictionary. Throws
/// `std::runtime_error` if some entry has no pattern.
inline std::vector<std::vector<std::pair<u64, u64>>> word_patterns(const Dictionary& d, const Ruleset& r)
{
    std::vector<std::vector<std::pair<u64, u64>>> out;
    for (const Entry& e : d.entries()) {
        auto p = local_pattern(e.word, e.translate, r);
        if (!p)
            throw std::runtime_error("no local P-pattern for word " + e.word);
        out.push_back(std::move(*p));
    }
    return out;
}

} // namespace maharaja
