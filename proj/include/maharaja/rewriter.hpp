// rewriter.hpp -- generic dictionary processes and multiplication-table triangles

#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dictionary.hpp"
#include "golden.hpp"

namespace maharaja {

/// How the reader behaves when no word starts at the head.
/// ScanForward tries every later offset; MatchAtHead stops.
enum class ReaderMode { ScanForward, MatchAtHead };

/// ScanForward for prefix-free dictionaries, MatchAtHead for longest-match.
inline ReaderMode default_reader(const Dictionary& d) noexcept
{
    return d.policy() == MatchPolicy::PrefixFree ? ReaderMode::ScanForward : ReaderMode::MatchAtHead;
}

struct RewriteState {
    Bits string;
    u64 head = 0;
    u64 steps = 0;

    bool operator==(const RewriteState&) const = default;
};

struct RewriteStep {
    std::size_t entry = 0;
    u64 consume_start = 0;
    u64 append_start = 0;
    /// Bits the reader passed over before this match.
    u64 skipped = 0;

    bool operator==(const RewriteStep&) const = default;
};

enum class RunStatus { Terminated, Budget };

struct RunResult {
    RunStatus status = RunStatus::Budget;
    RewriteState state;
    std::vector<RewriteStep> trace;

    /// The final string when the process stopped on its own.
    std::optional<Bits> output() const
    {
        return status == RunStatus::Terminated ? std::optional<Bits>(state.string) : std::nullopt;
    }
};

/// Performs at most `budget` translations starting from `state`.
inline RunResult resume(const Dictionary& d, RewriteState state, u64 budget,
                        std::optional<ReaderMode> mode = std::nullopt)
{
    const ReaderMode rm = mode.value_or(default_reader(d));
    RunResult r;
    r.state = std::move(state);
    auto& s = r.state;
    for (u64 done = 0; done < budget; ++done) {
        std::optional<std::size_t> m;
        u64 at = s.head;
        if (rm == ReaderMode::MatchAtHead) {
            m = d.match_at(s.string, at);
        } else {
            for (; at < s.string.size() && !m; ++at)
                m = d.match_at(s.string, at);
            if (m)
                --at;
        }
        if (!m) {
            r.status = RunStatus::Terminated;
            return r;
        }
        const Entry& e = d.entries()[*m];
        r.trace.push_back({*m, at, s.string.size(), at - s.head});
        s.string += e.translate;
        s.head = at + e.word.size();
        ++s.steps;
    }
    r.status = RunStatus::Budget;
    return r;
}

inline RunResult run(const Dictionary& d, const Bits& start, u64 max_steps,
                     std::optional<ReaderMode> mode = std::nullopt)
{
    if (start.empty())
        throw std::invalid_argument("run: empty start string");
    if (!is_bits(start))
        throw std::invalid_argument("run: start string is not binary");
    return resume(d, RewriteState{start, 0, 0}, max_steps, mode);
}

/// Raised when a triangle needs a product the table leaves empty.
class MissingProduct : public std::runtime_error {
public:
    MissingProduct(char x, char y, u64 row)
        : std::runtime_error(std::string("missing product ") + x + "*" + y + " in row " + std::to_string(row)),
          x_(x), y_(y), row_(row)
    {
    }

    char x() const noexcept { return x_; }
    char y() const noexcept { return y_; }
    /// Index of the row holding the adjacent pair xy.
    u64 row() const noexcept { return row_; }

private:
    char x_, y_;
    u64 row_;
};

/// A possibly partial operation x*y over an alphabet whose first symbol is
/// the stop symbol. Products never equal the stop symbol.
class MulTable {
public:
    MulTable(std::string alphabet, std::map<std::pair<char, char>, char> product)
        : alphabet_(std::move(alphabet)), product_(std::move(product))
    {
        if (alphabet_.size() < 2)
            throw std::invalid_argument("multable: alphabet needs the stop symbol and one more");
        if (std::set<char>(alphabet_.begin(), alphabet_.end()).size() != alphabet_.size())
            throw std::invalid_argument("multable: repeated symbol in alphabet");
        for (const auto& [k, v] : product_) {
            if (!has(k.first) || !has(k.second) || !has(v))
                throw std::invalid_argument(std::string("multable: unknown symbol in ") + k.first + "*" +
                                            k.second + "=" + v);
            if (v == stop())
                throw std::invalid_argument(std::string("multable: product ") + k.first + "*" + k.second +
                                            " equals the stop symbol");
        }
    }

    /// The table of the worked example, alphabet SABC.
    static MulTable example_table()
    {
        const std::string a = "SABC";
        const char* rows[] = {"ABBB", "CBAA", "CCCC", "AABA"};
        std::map<std::pair<char, char>, char> p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                p[{a[i], a[j]}] = rows[i][j];
        return MulTable(a, std::move(p));
    }

    /// The table x*y = c for every pair.
    static MulTable constant(std::string alphabet, char c)
    {
        std::map<std::pair<char, char>, char> p;
        for (char x : alphabet)
            for (char y : alphabet)
                p[{x, y}] = c;
        return MulTable(std::move(alphabet), std::move(p));
    }

    const std::string& alphabet() const noexcept { return alphabet_; }
    char stop() const noexcept { return alphabet_[0]; }
    bool has(char c) const noexcept { return alphabet_.find(c) != std::string::npos; }
    bool total() const noexcept { return product_.size() == alphabet_.size() * alphabet_.size(); }

    std::optional<char> product(char x, char y) const
    {
        auto it = product_.find({x, y});
        return it == product_.end() ? std::nullopt : std::optional<char>(it->second);
    }

    MulTable without(char x, char y) const
    {
        auto p = product_;
        p.erase({x, y});
        return MulTable(alphabet_, std::move(p));
    }

    const std::map<std::pair<char, char>, char>& products() const noexcept { return product_; }

private:
    std::string alphabet_;
    std::map<std::pair<char, char>, char> product_;
};

/// Rows 0..rows-1: "S", "SS", then each interior symbol is the product of
/// the two symbols above it.
inline std::vector<std::string> triangle(const MulTable& t, u64 rows)
{
    std::vector<std::string> out;
    if (rows == 0)
        return out;
    const char S = t.stop();
    out.emplace_back(1, S);
    if (rows > 1)
        out.emplace_back(2, S);
    while (out.size() < rows) {
        const std::string& prev = out.back();
        std::string next(1, S);
        for (std::size_t j = 1; j < prev.size(); ++j) {
            const auto p = t.product(prev[j - 1], prev[j]);
            if (!p)
                throw MissingProduct(prev[j - 1], prev[j], out.size() - 1);
            next.push_back(*p);
        }
        next.push_back(S);
        out.push_back(std::move(next));
    }
    return out;
}

/// Fixed-width binary codes, assigned in alphabet order.
class SymbolCodec {
public:
    explicit SymbolCodec(std::string alphabet) : alphabet_(std::move(alphabet))
    {
        width_ = 1;
        while ((std::size_t{1} << width_) < alphabet_.size())
            ++width_;
    }

    std::size_t width() const noexcept { return width_; }
    const std::string& alphabet() const noexcept { return alphabet_; }

    Bits encode(std::string_view symbols) const
    {
        Bits out;
        out.reserve(symbols.size() * width_);
        for (char c : symbols) {
            const auto i = alphabet_.find(c);
            if (i == std::string::npos)
                throw std::invalid_argument(std::string("codec: unknown symbol ") + c);
            for (std::size_t b = width_; b-- > 0;)
                out.push_back(((i >> b) & 1) ? '1' : '0');
        }
        return out;
    }

    /// Decodes whole symbols; a trailing partial code is ignored.
    std::string decode(std::string_view bits) const
    {
        std::string out;
        for (std::size_t p = 0; p + width_ <= bits.size(); p += width_) {
            std::size_t i = 0;
            for (std::size_t b = 0; b < width_; ++b)
                i = (i << 1) | static_cast<std::size_t>(bits[p + b] == '1');
            if (i >= alphabet_.size())
                throw std::invalid_argument("codec: code " + std::string(bits.substr(p, width_)) +
                                            " names no symbol");
            out.push_back(alphabet_[i]);
        }
        return out;
    }

private:
    std::string alphabet_;
    std::size_t width_ = 1;
};

struct EncodedTable {
    Dictionary dictionary;
    SymbolCodec codec;
    /// Table entry (x, y) behind each dictionary entry.
    std::vector<std::pair<char, char>> entry_pairs;
};

/// One rule per table entry: SS -> S(SS)(SS)S, SA -> S(SA)(SA),
/// AS -> (AS)(AS)S, AB -> (AB)(AB), where (xy) is the product.
/// Entries missing from a partial table get no rule.
inline EncodedTable encode_table(const MulTable& t)
{
    SymbolCodec codec(t.alphabet());
    const char S = t.stop();
    std::vector<Entry> entries;
    std::vector<std::pair<char, char>> pairs;
    for (char x : t.alphabet())
        for (char y : t.alphabet()) {
            const auto p = t.product(x, y);
            if (!p)
                continue;
            std::string rhs;
            if (x == S)
                rhs += S;
            rhs += *p;
            rhs += *p;
            if (y == S)
                rhs += S;
            entries.push_back({codec.encode(std::string{x, y}), codec.encode(rhs)});
            pairs.emplace_back(x, y);
        }
    return {Dictionary(std::move(entries), MatchPolicy::PrefixFree), std::move(codec), std::move(pairs)};
}

/// Splits a symbol stream "S..S S..S ..." into rows, undoubling interior
/// symbols. The first row of the stream is row 1. An incomplete last row is
/// dropped. Throws if the stream does not follow the pattern.
inline std::vector<std::string> decode_rows(std::string_view symbols, char S)
{
    std::vector<std::string> rows;
    std::size_t i = 0;
    while (i < symbols.size()) {
        if (symbols[i] != S)
            throw std::invalid_argument("decode_rows: row does not begin with the stop symbol at " +
                                        std::to_string(i));
        std::string row(1, S);
        std::size_t j = i + 1;
        bool closed = false;
        while (j < symbols.size()) {
            if (symbols[j] == S) {
                row.push_back(S);
                ++j;
                closed = true;
                break;
            }
            if (j + 1 >= symbols.size())
                break;
            if (symbols[j + 1] != symbols[j])
                throw std::invalid_argument("decode_rows: symbol at " + std::to_string(j) + " is not doubled");
            row.push_back(symbols[j]);
            j += 2;
        }
        if (!closed)
            break;
        rows.push_back(std::move(row));
        i = j;
    }
    return rows;
}

struct EncodingReport {
    bool rows_match = false;
    std::vector<std::string> expected;
    std::vector<std::string> decoded; // rows 0.. including the implicit "S"
    /// Table entries never read by the reader.
    std::vector<std::pair<char, char>> unused;
    u64 max_skip = 0;
    u64 steps = 0;
    Bits output;
};

/// Runs the encoded table from encode("SS") until `rows` triangle rows can be
/// decoded and compares them with triangle(t, rows).
inline EncodingReport verify_encoding(const MulTable& t, u64 rows)
{
    EncodingReport rep;
    rep.expected = triangle(t, rows);
    const EncodedTable enc = encode_table(t);
    const char S = t.stop();
    // Row i needs i reads, so rows*(rows+1)/2 steps suffice.
    const u64 budget = rows * (rows + 1) / 2 + 2;
    RunResult r = run(enc.dictionary, enc.codec.encode(std::string(2, S)), budget, ReaderMode::ScanForward);
    rep.steps = r.state.steps;
    rep.output = r.state.string;
    std::vector<bool> used(enc.entry_pairs.size(), false);
    for (const RewriteStep& s : r.trace) {
        used[s.entry] = true;
        rep.max_skip = std::max(rep.max_skip, s.skipped);
    }
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i])
            rep.unused.push_back(enc.entry_pairs[i]);
    rep.decoded.emplace_back(1, S);
    for (auto& row : decode_rows(enc.codec.decode(r.state.string), S))
        rep.decoded.push_back(std::move(row));
    if (rep.decoded.size() > rows)
        rep.decoded.resize(rows);
    rep.rows_match = rep.decoded == rep.expected;
    return rep;
}

// Table files: "multable v1 alphabet=<symbols>" then lines "x y -> z".

inline void save_table(std::ostream& os, const MulTable& t)
{
    os << "multable v1 alphabet=" << t.alphabet() << '\n';
    for (const auto& [k, v] : t.products())
        os << k.first << ' ' << k.second << " -> " << v << '\n';
}

inline MulTable load_table(std::istream& is)
{
    std::string header;
    if (!std::getline(is, header))
        throw std::invalid_argument("load_table: missing header");
    std::istringstream hs(header);
    std::string magic, version, al;
    hs >> magic >> version >> al;
    if (magic != "multable" || version != "v1" || !al.starts_with("alphabet="))
        throw std::invalid_argument("load_table: malformed header: " + header);
    std::map<std::pair<char, char>, char> p;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string x, y, arrow, z;
        if (!(ls >> x >> y >> arrow >> z) || x.size() != 1 || y.size() != 1 || z.size() != 1 || arrow != "->")
            throw std::invalid_argument("load_table: malformed line: " + line);
        p[{x[0], y[0]}] = z[0];
    }
    return MulTable(al.substr(9), std::move(p));
}

} // namespace maharaja
