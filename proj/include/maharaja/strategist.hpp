// strategist.hpp -- outcome decisions for (2,3)-Maharaja Nim from the
// dictionary, in time polynomial in the bit length of the position

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "codec.hpp"
#include "golden.hpp"
#include "oracle.hpp"
#include "sequences.hpp"

namespace maharaja {

/// Bookkeeping inconsistency inside the telescope. Never a game result.
class AnchorError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Seed, first read position and oracle rows of the columns before it.
struct ProcessSeed {
    Ruleset ruleset;
    Bits seed;
    u64 first_start = 0;
    /// P row of every column below first_start.
    std::vector<u64> head_rows;
};

/// Reads the seed of a game's dictionary process off a small oracle grid.
inline ProcessSeed process_seed(const Ruleset& r, LearnMode mode, u64 bound = 160)
{
    const OutcomeGrid g = compute_grid(r, bound);
    const LearnResult lr = learn_dictionary(g, mode);
    if (!lr.found_boundary || lr.seed.empty())
        throw std::runtime_error("process_seed: no word boundary inside a " + std::to_string(bound) + "-grid");
    ProcessSeed ps{r, lr.seed, lr.first_start, {}};
    for (u64 c = 0; c < lr.first_start; ++c)
        ps.head_rows.push_back(g.p_row(c));
    return ps;
}

/// Longest-match word boundaries of a greedy parse of bits[from, to).
/// A word is only taken when the reader can see max_word_length bits.
inline std::vector<u64> greedy_parse(const Dictionary& d, std::string_view bits, u64 from, u64 to)
{
    std::vector<u64> out;
    u64 h = from;
    while (h + d.max_word_length() <= to) {
        const auto m = d.match_at(bits.substr(0, to), h);
        if (!m)
            break;
        out.push_back(h);
        h += d.entries()[*m].word.size();
    }
    return out;
}

struct ConvergenceCertificate {
    /// Largest number of bits a greedy parse from an arbitrary position
    /// needs before it lands on a true word boundary.
    u64 q = 0;
    u64 argmax = 0;
    u64 positions_checked = 0;
    u64 sample_len = 0;
    /// "11" seen: the first 1 begins a word.
    u64 double_one_firings = 0;
    u64 double_one_violations = 0;
    u64 max_zero_run = 0;
    /// Occurrences of each of kAmbiguousStrings.
    std::array<u64, 6> ambiguous_counts{};
    /// Positions not resolved within the hard cap.
    std::vector<u64> unresolved;

    bool ok() const noexcept
    {
        return unresolved.empty() && double_one_violations == 0 && max_zero_run <= 5;
    }
};

inline constexpr std::array<std::string_view, 6> kAmbiguousStrings = {
    "010001000", "0101000", "010101000", "010001010", "0101010", "010101010"};

inline constexpr u64 kConvergenceCap = 256;

/// Measures the convergence window over a generated sample of sample_len bits.
inline ConvergenceCertificate convergence_window(const Dictionary& d, const ProcessSeed& ps, u64 sample_len)
{
    ConvergenceCertificate cert;
    cert.sample_len = sample_len;
    // The read head trails the string end by a factor of about phi.
    const u64 target = (sample_len + kConvergenceCap) * 7 / 4 + 2 * d.max_translate_length();
    const GenerateResult gen = generate_bitstring(d, ps.seed, ps.first_start, target);
    if (gen.stall)
        throw std::runtime_error("convergence_window: generation stalled at " + std::to_string(gen.stall->head));
    const Bits& B = gen.bits;
    std::vector<bool> boundary(B.size() + 1, false);
    for (const TraceEntry& t : gen.trace)
        boundary[t.consume_start] = true;
    const u64 known = gen.head; // boundaries beyond the head are unknown
    const u64 lo = ps.first_start;
    const u64 hi = std::min<u64>(sample_len, known > kConvergenceCap ? known - kConvergenceCap : 0);

    for (u64 u = lo; u < hi; ++u) {
        ++cert.positions_checked;
        u64 h = u;
        while (!boundary[h] && h - u <= kConvergenceCap) {
            const auto m = d.match_at(B, h);
            if (!m)
                break;
            h += d.entries()[*m].word.size();
        }
        if (!boundary[h]) {
            cert.unresolved.push_back(u);
            continue;
        }
        if (h - u > cert.q) {
            cert.q = h - u;
            cert.argmax = u;
        }
    }
    u64 run = 0;
    for (u64 i = lo; i < hi; ++i) {
        run = B[i] == '0' ? run + 1 : 0;
        cert.max_zero_run = std::max(cert.max_zero_run, run);
        if (i + 1 < B.size() && B[i] == '1' && B[i + 1] == '1') {
            ++cert.double_one_firings;
            if (!boundary[i])
                ++cert.double_one_violations;
        }
        for (std::size_t k = 0; k < kAmbiguousStrings.size(); ++k)
            if (B.compare(i, kAmbiguousStrings[k].size(), kAmbiguousStrings[k]) == 0)
                ++cert.ambiguous_counts[k];
    }
    return cert;
}

struct RuleFiring {
    std::optional<u64> boundary;
    u64 back_scan = 0;
    bool impossible = false;
};

/// Applies the local rules to the bits just before position p: "11"
/// places a boundary at the first 1, and six zeros cannot occur.
inline RuleFiring rule_boundary(std::string_view bits, u64 p)
{
    RuleFiring f;
    if (p > bits.size())
        throw std::out_of_range("rule_boundary: position beyond the string");
    if (p >= 2 && bits[p - 2] == '1' && bits[p - 1] == '1') {
        f.boundary = p - 2;
        f.back_scan = 2;
    }
    if (p >= 6 && bits.substr(p - 6, 6) == "000000")
        f.impossible = true;
    return f;
}

/// P rows of columns [0, columns) read off a fully generated string.
struct DirectRows {
    Bits bits;
    std::vector<u64> zeros;
    std::vector<u64> rows;
    std::vector<bool> boundary;
};

/// Generates far enough that every column below `columns` has its row,
/// then places each word's P-positions with the word's local pattern.
/// Throws AnchorError if a translate is not written at s + (zeros before s)
/// or the rows do not form a permutation.
inline DirectRows direct_rows(const Dictionary& d, const ProcessSeed& ps, u64 columns)
{
    const auto patterns = word_patterns(d, ps.ruleset);
    DirectRows out;
    const u64 target = static_cast<u64>(std::ceil(static_cast<double>(columns) * 1.75)) + 64;
    GenerateResult gen = generate_bitstring(d, ps.seed, ps.first_start, target);
    if (gen.stall)
        throw std::runtime_error("direct_rows: generation stalled at " + std::to_string(gen.stall->head));
    out.bits = std::move(gen.bits);
    out.zeros = zero_prefix(out.bits);
    out.rows.assign(columns, kNoRow);
    out.boundary.assign(out.bits.size() + 1, false);
    for (u64 c = 0; c < ps.first_start && c < columns; ++c) {
        const u64 r = ps.head_rows[c];
        out.rows[c] = r;
        if (r >= c && r < columns)
            out.rows[r] = c;
    }
    for (const TraceEntry& t : gen.trace) {
        out.boundary[t.consume_start] = true;
        if (t.append_start != t.consume_start + out.zeros[t.consume_start])
            throw AnchorError("direct_rows: translate of word at " + std::to_string(t.consume_start) +
                              " written at " + std::to_string(t.append_start));
        if (t.consume_start >= columns)
            continue;
        const auto& pat = patterns[*d.find(t.word)];
        for (const auto& [co, ro] : pat) {
            const u64 a = t.consume_start + co, b = t.append_start + ro;
            if (a < columns)
                out.rows[a] = b;
            if (b < columns)
                out.rows[b] = a;
        }
    }
    std::vector<bool> seen(columns, false);
    for (u64 c = 0; c < columns; ++c) {
        const u64 r = out.rows[c];
        if (r == kNoRow)
            throw AnchorError("direct_rows: column " + std::to_string(c) + " has no row");
        if (r < columns) {
            if (seen[r] || out.rows[r] != c)
                throw AnchorError("direct_rows: rows do not pair up at column " + std::to_string(c));
            seen[r] = true;
        }
    }
    return out;
}

/// Zero-count propagation constant: n(s + n(s)) - s over every word of a
/// learned trace, if it is the same for all words.
inline std::optional<i64> anchor_kappa(const LearnResult& lr, const Bits& oracle_bits)
{
    const auto z = zero_prefix(oracle_bits);
    std::optional<i64> k;
    for (const TraceEntry& t : lr.trace) {
        if (t.append_start >= z.size())
            break;
        const i64 v = static_cast<i64>(z[t.append_start]) - static_cast<i64>(t.consume_start);
        if (k && *k != v)
            return std::nullopt;
        k = v;
    }
    return k;
}

struct TelescopeConfig {
    u64 q = 12;
    u64 c = 9;
    u64 base_len = 4096;
    u64 depth_margin = 2;
    /// Accepted range of y - floor(phi x) for upper P-positions.
    i64 band_lo = -3;
    i64 band_hi = 5;
    /// Half width of every window, in bits.
    u64 half_width = 64;
    /// n(s + n(s)) = s + kappa for every word start s.
    i64 kappa = 1;

    /// Smallest half width that lets each level's translated words cover
    /// the next window: phi^2 (q + c) plus slack.
    static u64 min_half_width(u64 q, u64 c)
    {
        return static_cast<u64>(std::ceil(kPhi * kPhi * static_cast<double>(q + c))) + 8;
    }

    /// Throws `std::invalid_argument` on inconsistent values.
    void validate() const
    {
        if (c > q)
            throw std::invalid_argument("telescope: translate length c exceeds window q");
        if (half_width < min_half_width(q, c))
            throw std::invalid_argument("telescope: half width " + std::to_string(half_width) + " below " +
                                        std::to_string(min_half_width(q, c)));
        if (base_len < 4 * half_width + 64)
            throw std::invalid_argument("telescope: base_len must be at least 4*half_width + 64");
        if (band_lo > band_hi)
            throw std::invalid_argument("telescope: empty band");
    }
};

struct TelescopeLevel {
    u64 center = 0;
    u64 start = 0;
    Bits window;
    /// Zeros before `start`.
    u64 zeros_before = 0;
};

struct TelescopeTrace {
    /// Deepest level first.
    std::vector<TelescopeLevel> levels;
    u64 rounds = 0;
    bool band_rejected = false;
    bool from_base = false;
};

/// Widens an observed band by a factor 2 plus one on each side.
inline std::pair<i64, i64> widen_band(i64 lo, i64 hi) { return {2 * lo - 1, 2 * hi + 1}; }

class Telescope {
public:
    Telescope(Dictionary d, ProcessSeed ps, TelescopeConfig cfg)
        : dict_(std::move(d)), seed_(std::move(ps)), cfg_(cfg)
    {
        cfg_.validate();
        patterns_ = word_patterns(dict_, seed_.ruleset);
        base_ = direct_rows(dict_, seed_, cfg_.base_len);
    }

    /// The (2,3) game with constants certified against an oracle grid of
    /// the given bound and a generated sample of sample_len bits.
    static Telescope certified_23(u64 base_len = 4096, u64 oracle_bound = 2000, u64 sample_len = 100000,
                                  ConvergenceCertificate* cert_out = nullptr)
    {
        const Ruleset r = Ruleset::klm(2, 3);
        const Dictionary d = dictionary_23();
        ProcessSeed ps = process_seed(r, LearnMode::KlmRelaxed);
        const ConvergenceCertificate cert = convergence_window(d, ps, sample_len);
        if (!cert.ok())
            throw std::runtime_error("certified_23: convergence certificate failed");
        const OutcomeGrid g = compute_grid(r, oracle_bound);
        const LearnResult lr = learn_dictionary(g, LearnMode::KlmRelaxed);
        const auto kappa = anchor_kappa(lr, bitstring_from_grid(g).bits);
        if (!kappa)
            throw std::runtime_error("certified_23: zero counts do not propagate uniformly");
        const IntBand band = golden_band(upper_p_sequence(g));
        TelescopeConfig cfg;
        cfg.q = std::max<u64>(cert.q, d.max_translate_length());
        cfg.c = d.max_translate_length();
        cfg.half_width = TelescopeConfig::min_half_width(cfg.q, cfg.c);
        cfg.base_len = std::max<u64>(base_len, 4 * cfg.half_width + 64);
        std::tie(cfg.band_lo, cfg.band_hi) = widen_band(band.lo, band.hi);
        cfg.kappa = *kappa;
        if (cert_out)
            *cert_out = cert;
        return Telescope(d, std::move(ps), cfg);
    }

    const TelescopeConfig& config() const noexcept { return cfg_; }
    const DirectRows& base() const noexcept { return base_; }

    /// P iff (x, y) or (y, x) is a P-position.
    Outcome decide(u64 x, u64 y, TelescopeTrace* trace = nullptr) const
    {
        TelescopeTrace local;
        TelescopeTrace& tr = trace ? *trace : local;
        tr = {};
        if (x > y)
            std::swap(x, y);
        const u64 fx = floor_phi(x);
        const i64 off = y >= fx ? static_cast<i64>(y - fx) : -static_cast<i64>(fx - y);
        if (off < cfg_.band_lo || off > cfg_.band_hi) {
            tr.band_rejected = true;
            return Outcome::N;
        }
        const auto r = upper_row(x, tr);
        return r && *r == y ? Outcome::P : Outcome::N;
    }

    /// Row of the P-position in column x when it lies on or above the
    /// diagonal, nullopt when column x holds a lower P-position.
    std::optional<u64> upper_row(u64 x, TelescopeTrace& tr) const
    {
        const u64 h = cfg_.half_width;
        if (x + h < cfg_.base_len) {
            tr.from_base = true;
            const u64 r = base_.rows[x];
            return r >= x ? std::optional<u64>(r) : std::nullopt;
        }
        std::vector<u64> centers{x};
        while (centers.back() + h >= cfg_.base_len)
            centers.push_back(floor_div_phi(centers.back()));
        for (std::size_t i = 0; i + 1 < centers.size(); ++i) {
            const double ratio = static_cast<double>(centers[i]) / static_cast<double>(centers[i + 1]);
            if (std::abs(ratio - kPhi) > 0.05)
                throw AnchorError("telescope: reflection ratio " + std::to_string(ratio) + " at level " +
                                  std::to_string(i));
        }
        tr.rounds = centers.size() - 1;

        TelescopeLevel lv;
        lv.center = centers.back();
        lv.start = lv.center - h;
        lv.window = base_.bits.substr(lv.start, 2 * h + 1);
        lv.zeros_before = base_.zeros[lv.start];
        tr.levels.push_back(lv);
        for (std::size_t i = centers.size() - 1; i-- > 0;) {
            lv = translate_level(lv, centers[i]);
            tr.levels.push_back(lv);
        }

        const std::string_view w = lv.window;
        const u64 rel = x - lv.start;
        if (w[rel] == '1')
            return std::nullopt;
        for (const u64 s : greedy_parse(dict_, w, 0, w.size())) {
            const Entry& en = dict_.entries()[*dict_.match_at(w, s)];
            if (s < cfg_.q || rel < s || rel >= s + en.word.size())
                continue;
            const u64 t = lv.start + s + lv.zeros_before + count_zeros(w.substr(0, s));
            for (const auto& [co, ro] : patterns_[*dict_.find(en.word)])
                if (co == rel - s)
                    return t + ro;
            throw AnchorError("telescope: word " + en.word + " has no pattern entry at offset " +
                              std::to_string(rel - s));
        }
        throw AnchorError("telescope: no trusted word covers column " + std::to_string(x));
    }

private:
    /// Translates the trusted words of `src` and cuts the window around `center`.
    TelescopeLevel translate_level(const TelescopeLevel& src, u64 center) const
    {
        const u64 h = cfg_.half_width;
        const std::string_view w = src.window;
        Bits out;
        std::optional<u64> first_s, t0;
        u64 zeros = src.zeros_before;
        u64 prev = 0;
        for (const u64 s : greedy_parse(dict_, w, 0, w.size())) {
            zeros += count_zeros(w.substr(prev, s - prev));
            prev = s;
            if (s < cfg_.q)
                continue;
            if (!first_s) {
                first_s = src.start + s;
                t0 = *first_s + zeros;
            }
            out += dict_.entries()[*dict_.match_at(w, s)].translate;
        }
        if (!t0)
            throw AnchorError("telescope: no trusted word in window at " + std::to_string(src.start));
        if (center < h || *t0 > center - h || *t0 + out.size() < center + h + 1)
            throw AnchorError("telescope: translated span [" + std::to_string(*t0) + ", " +
                              std::to_string(*t0 + out.size()) + ") misses window around " +
                              std::to_string(center));
        TelescopeLevel lv;
        lv.center = center;
        lv.start = center - h;
        const u64 skip = lv.start - *t0;
        lv.window = out.substr(skip, 2 * h + 1);
        const i64 zt = static_cast<i64>(*first_s) + cfg_.kappa;
        lv.zeros_before = static_cast<u64>(zt) + count_zeros(std::string_view(out).substr(0, skip));
        return lv;
    }

    Dictionary dict_;
    ProcessSeed seed_;
    TelescopeConfig cfg_;
    std::vector<std::vector<std::pair<u64, u64>>> patterns_;
    DirectRows base_;
};

} // namespace maharaja
