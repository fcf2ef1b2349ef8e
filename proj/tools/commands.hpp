// commands.hpp -- subcommand bodies of the maharaja tool

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maharaja/codec.hpp"
#include "maharaja/oracle.hpp"
#include "maharaja/play.hpp"
#include "maharaja/plot.hpp"
#include "maharaja/rewriter.hpp"
#include "maharaja/sequences.hpp"
#include "maharaja/strategist.hpp"

namespace maharaja::cli {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

/// Raised for bad flag values found after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or memory trouble.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    u64 memory_budget = kDefaultMemoryBudget;
    std::string cache_dir;
    u64 base_len = 4096;
    u64 depth_margin = 2;
};

inline Ruleset parse_game(const std::string& id)
{
    try {
        return Ruleset::parse(id);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline Position parse_position(const std::string& s)
{
    const auto nums = integers_in(s);
    if (nums.size() != 2 || s.find('-') != std::string::npos)
        throw UsageError("expected a position x,y, got '" + s + "'");
    return {nums[0], nums[1]};
}

inline std::ofstream open_out(const std::string& path, bool binary = false)
{
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f)
        throw ResourceError("cannot write " + path);
    return f;
}

inline std::ifstream open_in(const std::string& path, bool binary = false)
{
    std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
    if (!f)
        throw ResourceError("cannot read " + path);
    return f;
}

inline std::string cache_path(const Globals& g, const Ruleset& r, u64 bound)
{
    return (std::filesystem::path(g.cache_dir) / (file_stem(r.id()) + "_" + std::to_string(bound) + ".grid"))
        .string();
}

/// Loads a cached grid when the cache directory has one, else computes
/// and stores it there.
inline OutcomeGrid grid_for(const Globals& g, const Ruleset& r, u64 bound)
{
    if (g.cache_dir.empty())
        return compute_grid(r, bound, g.memory_budget);
    const std::string p = cache_path(g, r, bound);
    if (std::filesystem::exists(p)) {
        auto in = open_in(p, true);
        return load_grid(in, g.memory_budget);
    }
    OutcomeGrid grid = compute_grid(r, bound, g.memory_budget);
    std::filesystem::create_directories(g.cache_dir);
    auto out = open_out(p, true);
    save_grid(out, grid);
    return grid;
}

// ---------------------------------------------------------------- compute

struct ComputeOptions {
    std::string game;
    u64 bound = 0;
    std::string cache;
    u64 list = 20;
};

inline int cmd_compute(const Globals& gl, const ComputeOptions& o, std::ostream& out)
{
    const Ruleset r = parse_game(o.game);
    const OutcomeGrid g = compute_grid(r, o.bound, gl.memory_budget);
    std::string path = o.cache;
    if (path.empty() && !gl.cache_dir.empty()) {
        std::filesystem::create_directories(gl.cache_dir);
        path = cache_path(gl, r, o.bound);
    }
    if (!path.empty()) {
        auto f = open_out(path, true);
        save_grid(f, g);
        out << "cached " << path << '\n';
    }
    const PSequence s = upper_p_sequence(g);
    out << "game " << r.id() << " bound " << o.bound << " safe columns " << s.safe_cutoff << " upper pairs "
        << s.pairs.size() << '\n';
    for (std::size_t i = 0; i < s.pairs.size() && i < o.list; ++i)
        out << "(" << s.pairs[i].first << "," << s.pairs[i].second << ")\n";
    return kOk;
}

// ------------------------------------------------------------------- plot

struct PlotOptions {
    std::vector<std::string> games;
    u64 bound = 50;
    std::string format = "svg";
    std::string out_dir = ".";
    bool overlay = false;
};

inline int cmd_plot(const Globals& gl, const PlotOptions& o, std::ostream& out)
{
    PlotSpec spec;
    spec.bound = o.bound;
    spec.overlay_lines = o.overlay;
    try {
        spec.format = parse_plot_format(o.format);
        for (const auto& g : o.games) {
            if (g == "klm-panels") {
                for (auto& k : klm_panel_games())
                    spec.games.push_back(k);
            } else {
                spec.games.push_back(g);
            }
        }
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::filesystem::create_directories(o.out_dir);
    for (const auto& id : spec.games) {
        const Ruleset r = parse_game(id);
        const OutcomeGrid g = grid_for(gl, r, spec.bound);
        const auto path = std::filesystem::path(o.out_dir) /
                          (file_stem(r.id()) + "." + std::string(extension(spec.format)));
        auto f = open_out(path.string());
        write_plot(f, g, spec);
        out << "wrote " << path.string() << '\n';
    }
    return kOk;
}

// ----------------------------------------------------------------- verify

struct VerifyOptions {
    std::string game;
    std::optional<u64> bound;
};

namespace detail {

struct Checks {
    std::ostream& out;
    bool all = true;

    void check(bool ok, const std::string& what)
    {
        out << (ok ? "ok    " : "FAIL  ") << what << '\n';
        all = all && ok;
    }
};

inline std::string band_str(i64 lo, i64 hi) { return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]"; }

} // namespace detail

inline int cmd_verify(const Globals& gl, const VerifyOptions& o, std::ostream& out)
{
    const Ruleset r = parse_game(o.game);
    const std::string id = r.id();
    detail::Checks c{out};
    if (id == "wythoff") {
        const u64 N = o.bound.value_or(2000);
        const OutcomeGrid g = grid_for(gl, r, N);
        const StructureReport s = check_structure(g);
        out << "wythoff grid " << N << ", safe columns " << s.safe_cutoff << '\n';
        c.check(s.rows_columns_ok(), "one P-position in every safe row and column");
        c.check(s.diagonals_ok() && s.empty_diagonals.empty(),
                "one P-position on every safe diagonal (|C| < " + std::to_string(s.diagonal_cutoff) + ")");
        c.check(s.coverage_every_prefix, "differences of pairs 0..n are exactly {0..n} for every n");
        const PSequence seq = upper_p_sequence(g);
        bool closed = true;
        for (std::size_t n = 0; n < seq.pairs.size(); ++n)
            closed = closed && wythoff_pair(n) == seq.pairs[n];
        c.check(closed, "pairs equal (floor(phi n), floor(phi^2 n)) for n < " + std::to_string(seq.pairs.size()));
        std::vector<u64> as, bs;
        for (std::size_t n = 1; n < seq.pairs.size(); ++n) {
            as.push_back(seq.pairs[n].first);
            bs.push_back(seq.pairs[n].second);
        }
        const u64 upto = seq.pairs.empty() ? 0 : seq.pairs.back().first;
        c.check(check_complementary(as, bs, upto).ok, "a and b complementary up to " + std::to_string(upto));
    } else if (id == "maharaja") {
        const u64 N = o.bound.value_or(5000);
        const OutcomeGrid g = grid_for(gl, r, N);
        const StructureReport s = check_structure(g);
        out << "maharaja grid " << N << ", safe columns " << s.safe_cutoff << ", upper pairs " << s.pair_count
            << '\n';
        c.check(s.rows_columns_ok(), "one P-position in every safe row and column");
        c.check(s.diagonals_ok() && s.empty_diagonals.empty(),
                "one P-position on every safe diagonal (|C| < " + std::to_string(s.diagonal_cutoff) + ")");
        c.check(s.coverage_max_gap <= 7, "difference coverage recurs within 7 pairs (max gap " +
                                             std::to_string(s.coverage_max_gap) + ")");
        c.check(s.band_lo >= -4 && s.band_hi <= 3, "b_n - a_n - n within [-4, 3], observed " +
                                                       detail::band_str(s.band_lo, s.band_hi));
        const BitString bs = bitstring_from_grid(g);
        const Dictionary d = maharaja_dictionary();
        const VerificationReport v = verify_dictionary(d, bs, 8);
        c.check(v.ok(), "14-word dictionary reproduces the oracle bit-string (" + std::to_string(v.words_checked) +
                            " words)");
        const LearnResult lr = learn_dictionary(g, LearnMode::Maharaja);
        bool subset = lr.conflicts.empty();
        for (const Entry& e : lr.dictionary.entries()) {
            const auto i = d.find(e.word);
            subset = subset && i && d.entries()[*i].translate == e.translate;
        }
        c.check(subset, "learned dictionary (" + std::to_string(lr.dictionary.size()) + " words) lies in the 14");
        const GenerateResult gen = generate_bitstring(d, lr.seed, lr.first_start, 34000);
        const ExclusionReport ex = check_exclusions(d, gen.bits, gen.trace);
        c.check(!gen.stall && ex.ok(), "no excluded word at a word start; static translate rules hold");
    } else if (id == "klm:2,3") {
        const u64 N = o.bound.value_or(3000);
        const OutcomeGrid g = grid_for(gl, r, N);
        const StructureReport s = check_structure(g);
        out << "(2,3) grid " << N << ", safe columns " << s.safe_cutoff << '\n';
        c.check(s.rows_columns_ok(), "one P-position in every safe row and column");
        c.check(s.diagonals_ok(), "at most one P-position on every diagonal");
        const LearnResult lr = learn_dictionary(g, LearnMode::KlmRelaxed);
        const Dictionary d = dictionary_23();
        bool same = lr.conflicts.empty() && lr.dictionary.size() == d.size();
        for (const Entry& e : lr.dictionary.entries()) {
            const auto i = d.find(e.word);
            same = same && i && d.entries()[*i].translate == e.translate;
        }
        c.check(same, "learned dictionary equals the 4-entry dictionary");
        const VerificationReport v = verify_dictionary(d, bitstring_from_grid(g), lr.first_start);
        c.check(v.ok(), "dictionary reproduces the oracle bit-string (" + std::to_string(v.words_checked) + " words)");
        const ProcessSeed ps = process_seed(r, LearnMode::KlmRelaxed);
        const ConvergenceCertificate cert = convergence_window(d, ps, 100000);
        c.check(cert.ok(), "convergence window q = " + std::to_string(cert.q) + " bits, max zero run " +
                               std::to_string(cert.max_zero_run));
    } else {
        throw UsageError("verify supports wythoff, maharaja and 23m");
    }
    out << (c.all ? "all checks passed\n" : "some checks failed\n");
    return c.all ? kOk : kVerifyFailed;
}

// -------------------------------------------------------------- bitstring

struct BitstringOptions {
    std::string game;
    u64 bound = 2000;
    std::optional<u64> generate; // target length from the dictionary
    std::string out;
    u64 from = 0;
    std::optional<u64> count;
};

inline LearnMode learn_mode(const Ruleset& r)
{
    return r == Ruleset::maharaja() ? LearnMode::Maharaja : LearnMode::KlmRelaxed;
}

inline Dictionary builtin_dictionary(const Ruleset& r)
{
    if (r == Ruleset::maharaja())
        return maharaja_dictionary();
    if (r == Ruleset::klm(2, 3))
        return dictionary_23();
    throw UsageError("no built-in dictionary for " + r.id());
}

inline int cmd_bitstring(const Globals& gl, const BitstringOptions& o, std::ostream& out)
{
    const Ruleset r = parse_game(o.game);
    BitString bs;
    if (o.generate) {
        const Dictionary d = builtin_dictionary(r);
        const ProcessSeed ps = process_seed(r, learn_mode(r));
        GenerateResult g = generate_bitstring(d, ps.seed, ps.first_start, *o.generate);
        if (g.stall)
            out << "stalled at " << g.stall->head << ": " << g.stall->context << '\n';
        bs = {r, 0, g.bits.substr(0, std::min<u64>(*o.generate, g.bits.size()))};
    } else {
        bs = bitstring_from_grid(grid_for(gl, r, o.bound));
    }
    if (!o.out.empty()) {
        auto f = open_out(o.out);
        save_bitstring(f, bs);
    }
    const u64 from = std::min<u64>(o.from, bs.bits.size());
    const u64 n = std::min<u64>(o.count.value_or(bs.bits.size() - from), bs.bits.size() - from);
    out << "bits v1 ruleset=" << r.id() << " start=" << from << " len=" << n << '\n';
    out << bs.bits.substr(from, n) << '\n';
    return kOk;
}

// ------------------------------------------------------------- dict-learn

struct DictLearnOptions {
    std::string game;
    u64 bound = 3000;
    std::string out;
    u64 trace = 0;
};

inline int cmd_dict_learn(const Globals& gl, const DictLearnOptions& o, std::ostream& out)
{
    const Ruleset r = parse_game(o.game);
    const LearnResult lr = learn_dictionary(grid_for(gl, r, o.bound), learn_mode(r));
    if (!lr.found_boundary) {
        out << lr.note << '\n';
        return kVerifyFailed;
    }
    out << "# first word at column " << lr.first_start << ", seed " << lr.seed << '\n';
    out << "# " << lr.trace.size() << " words read, safe length " << lr.safe_length << '\n';
    if (!lr.note.empty())
        out << "# " << lr.note << '\n';
    save_dictionary(out, lr.dictionary);
    for (const auto& cf : lr.conflicts)
        out << "# conflict at " << cf.column << ": " << cf.word << " -> " << cf.first << " / " << cf.other << '\n';
    for (std::size_t i = 0; i < lr.trace.size() && i < o.trace; ++i) {
        const auto& t = lr.trace[i];
        out << "# trace " << t.consume_start << ' ' << t.append_start << ' ' << t.word << " -> " << t.translate
            << '\n';
    }
    if (!o.out.empty()) {
        auto f = open_out(o.out);
        save_dictionary(f, lr.dictionary);
    }
    return lr.conflicts.empty() ? kOk : kVerifyFailed;
}

// --------------------------------------------------------------- dict-run

struct DictRunOptions {
    std::string dict; // file path, or "maharaja" / "23m"
    std::string seed;
    std::optional<u64> head;
    u64 target = 1000;
    std::optional<u64> max_steps;
    bool census = false;
    u64 census_limit = 20000;
    std::string out;
};

inline Dictionary dictionary_arg(const std::string& s)
{
    if (s == "maharaja" || s == "m")
        return maharaja_dictionary();
    if (s == "23m")
        return dictionary_23();
    auto f = open_in(s);
    try {
        return load_dictionary(f);
    } catch (const std::invalid_argument& e) {
        throw UsageError(s + ": " + e.what());
    }
}

inline int cmd_dict_run(const Globals&, const DictRunOptions& o, std::ostream& out)
{
    const Dictionary d = dictionary_arg(o.dict);
    Bits seed = o.seed;
    u64 head = o.head.value_or(0);
    if (seed.empty()) {
        if (o.dict == "maharaja" || o.dict == "m" || o.dict == "23m") {
            const ProcessSeed ps = o.dict == "23m" ? process_seed(Ruleset::klm(2, 3), LearnMode::KlmRelaxed)
                                                   : process_seed(Ruleset::maharaja(), LearnMode::Maharaja);
            seed = ps.seed;
            head = o.head.value_or(ps.first_start);
        } else {
            throw UsageError("--seed is required with a dictionary file");
        }
    }
    GenerateResult g;
    try {
        g = generate_bitstring(d, seed, head, o.target, o.max_steps);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    out << "length " << g.bits.size() << " steps " << g.trace.size() << " head " << g.head << '\n';
    if (g.stall)
        out << "stalled at " << g.stall->head << ", next bits " << g.stall->context << '\n';
    if (o.census) {
        const auto counts = census(d, g.trace, o.census_limit);
        for (std::size_t i = 0; i < d.size(); ++i)
            out << d.entries()[i].word << ' ' << counts[i] << '\n';
    }
    if (!o.out.empty()) {
        auto f = open_out(o.out);
        f << g.bits << '\n';
    } else if (!o.census) {
        out << g.bits << '\n';
    }
    return g.stall ? kVerifyFailed : kOk;
}

// ---------------------------------------------------------------- rewrite

struct RewriteOptions {
    std::string dict;
    std::string start;
    u64 max_steps = 1000;
    std::string reader; // scan, head, or empty for the policy default
    bool trace = false;
};

inline int cmd_rewrite(const Globals&, const RewriteOptions& o, std::ostream& out)
{
    const Dictionary d = dictionary_arg(o.dict);
    std::optional<ReaderMode> mode;
    if (o.reader == "scan")
        mode = ReaderMode::ScanForward;
    else if (o.reader == "head")
        mode = ReaderMode::MatchAtHead;
    else if (!o.reader.empty())
        throw UsageError("--reader must be scan or head");
    RunResult r;
    try {
        r = run(d, o.start, o.max_steps, mode);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (o.trace)
        for (const auto& s : r.trace)
            out << "step read " << s.consume_start << " skip " << s.skipped << " write " << s.append_start << ' '
                << d.entries()[s.entry].word << " -> " << d.entries()[s.entry].translate << '\n';
    out << (r.status == RunStatus::Terminated ? "terminated" : "budget exhausted") << " after " << r.state.steps
        << " steps, head " << r.state.head << ", length " << r.state.string.size() << '\n';
    out << r.state.string << '\n';
    return kOk;
}

// --------------------------------------------------------------- triangle

struct TriangleOptions {
    std::string table = "example";
    u64 rows = 8;
    bool encode = false;
    bool verify = false;
};

inline int cmd_triangle(const Globals&, const TriangleOptions& o, std::ostream& out)
{
    MulTable t = MulTable::example_table();
    if (o.table != "example") {
        auto f = open_in(o.table);
        try {
            t = load_table(f);
        } catch (const std::invalid_argument& e) {
            throw UsageError(o.table + ": " + e.what());
        }
    }
    try {
        for (const auto& row : triangle(t, o.rows))
            out << row << '\n';
    } catch (const MissingProduct& e) {
        out << e.what() << '\n';
        return kVerifyFailed;
    }
    if (o.encode) {
        const EncodedTable enc = encode_table(t);
        out << "# code width " << enc.codec.width() << '\n';
        for (std::size_t i = 0; i < enc.dictionary.size(); ++i) {
            const Entry& e = enc.dictionary.entries()[i];
            out << enc.codec.decode(e.word) << " -> " << enc.codec.decode(e.translate) << "    " << e.word << " -> "
                << e.translate << '\n';
        }
    }
    if (o.verify) {
        const EncodingReport rep = verify_encoding(t, o.rows);
        out << "encoded process reproduces " << o.rows << " rows: " << (rep.rows_match ? "yes" : "no") << '\n';
        out << "unused entries:";
        for (const auto& [x, y] : rep.unused)
            out << ' ' << x << '*' << y;
        out << '\n';
        return rep.rows_match ? kOk : kVerifyFailed;
    }
    return kOk;
}

// ----------------------------------------------------------------- decide

struct DecideOptions {
    std::string game = "23m";
    std::string pos;
    bool trace = false;
};

inline int cmd_decide(const Globals& gl, const DecideOptions& o, std::ostream& out)
{
    const Ruleset r = parse_game(o.game);
    if (r != Ruleset::klm(2, 3))
        throw UsageError("decide supports only 23m");
    const Position p = parse_position(o.pos);
    ConvergenceCertificate cert;
    const Telescope tel = Telescope::certified_23(gl.base_len, 2000, 100000, &cert);
    TelescopeTrace tr;
    const Outcome res = tel.decide(p.x, p.y, &tr);
    if (o.trace) {
        const auto& c = tel.config();
        out << "config q=" << c.q << " c=" << c.c << " half_width=" << c.half_width << " base_len=" << c.base_len
            << " band=[" << c.band_lo << "," << c.band_hi << "] kappa=" << c.kappa << '\n';
        if (tr.band_rejected)
            out << "outside band\n";
        if (tr.from_base)
            out << "inside base prefix\n";
        for (std::size_t i = 0; i < tr.levels.size(); ++i) {
            const auto& lv = tr.levels[i];
            out << "level " << tr.levels.size() - 1 - i << " center " << lv.center << " start " << lv.start
                << " zeros " << lv.zeros_before << ' ' << lv.window << '\n';
        }
        out << "rounds " << tr.rounds << " (bound " << ceil_log_phi(std::max(p.x, p.y)) + gl.depth_margin << ")\n";
    }
    out << to_string(p) << ' ' << to_char(res) << '\n';
    return kOk;
}

// ------------------------------------------------------------------- play

struct PlayOptions {
    std::string game = "maharaja";
    std::string start = "10,17";
    bool engine_first = false;
};

inline int cmd_play(const Globals& gl, const PlayOptions& o, std::istream& in, std::ostream& out)
{
    const Ruleset r = parse_game(o.game);
    const Position s = parse_position(o.start);
    const OutcomeGrid g = compute_grid(r, std::max(s.x, s.y) + 1, gl.memory_budget);
    play_session(in, out, r, s, !o.engine_first, [&](Position p) { return g.at(p); });
    return kOk;
}

} // namespace maharaja::cli
