// dictionary.hpp -- binary word/translate dictionaries with prefix matching

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maharaja {

/// A bit sequence stored as the characters '0' and '1'.
using Bits = std::string;

inline bool is_bits(std::string_view s) noexcept
{
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

enum class MatchPolicy { PrefixFree, LongestMatch };

inline std::string_view to_string(MatchPolicy p) noexcept
{
    return p == MatchPolicy::PrefixFree ? "prefix-free" : "longest-match";
}

inline MatchPolicy parse_policy(std::string_view s)
{
    if (s == "prefix-free")
        return MatchPolicy::PrefixFree;
    if (s == "longest-match")
        return MatchPolicy::LongestMatch;
    throw std::invalid_argument("unknown match policy: " + std::string(s));
}

struct Entry {
    Bits word;
    Bits translate;

    bool operator==(const Entry&) const = default;
};

/// Ordered word -> translate map over {0,1} with a matching policy.
///
/// Words are nonempty and distinct; under PrefixFree no word is a proper
/// prefix of another. Violations throw `std::invalid_argument`.
class Dictionary {
public:
    Dictionary() = default;

    Dictionary(std::vector<Entry> entries, MatchPolicy policy)
        : entries_(std::move(entries)), policy_(policy)
    {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const Entry& e = entries_[i];
            if (e.word.empty())
                throw std::invalid_argument("dictionary: empty word");
            if (!is_bits(e.word) || !is_bits(e.translate))
                throw std::invalid_argument("dictionary: non-binary entry " + e.word + " -> " + e.translate);
            std::int32_t n = 0;
            for (char c : e.word) {
                const int b = c - '0';
                if (nodes_[n].child[b] < 0) {
                    nodes_[n].child[b] = static_cast<std::int32_t>(nodes_.size());
                    nodes_.push_back({});
                }
                n = nodes_[n].child[b];
            }
            if (nodes_[n].entry >= 0)
                throw std::invalid_argument("dictionary: duplicate word " + e.word);
            nodes_[n].entry = static_cast<std::int32_t>(i);
            max_word_ = std::max(max_word_, e.word.size());
            max_translate_ = std::max(max_translate_, e.translate.size());
        }
        if (policy_ == MatchPolicy::PrefixFree)
            for (const Entry& e : entries_)
                for (const Entry& f : entries_)
                    if (e.word.size() < f.word.size() && f.word.starts_with(e.word))
                        throw std::invalid_argument("dictionary: '" + e.word + "' is a prefix of '" +
                                                    f.word + "' under prefix-free policy");
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    MatchPolicy policy() const noexcept { return policy_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t max_word_length() const noexcept { return max_word_; }
    std::size_t max_translate_length() const noexcept { return max_translate_; }

    /// Index of the longest word that is a prefix of bits[pos..), if any.
    /// For a prefix-free dictionary this is the unique match.
    std::optional<std::size_t> match_at(std::string_view bits, std::size_t pos) const noexcept
    {
        std::optional<std::size_t> best;
        std::int32_t n = 0;
        for (std::size_t i = pos; i < bits.size(); ++i) {
            const int b = bits[i] - '0';
            if (b != 0 && b != 1)
                break;
            n = nodes_[n].child[b];
            if (n < 0)
                break;
            if (nodes_[n].entry >= 0)
                best = static_cast<std::size_t>(nodes_[n].entry);
        }
        return best;
    }

    /// Whether some word could still match once more bits arrive after bits[pos..).
    bool could_extend(std::string_view bits, std::size_t pos) const noexcept
    {
        std::int32_t n = 0;
        for (std::size_t i = pos; i < bits.size(); ++i) {
            n = nodes_[n].child[bits[i] - '0'];
            if (n < 0)
                return false;
        }
        return nodes_[n].child[0] >= 0 || nodes_[n].child[1] >= 0;
    }

    std::optional<std::size_t> find(std::string_view word) const noexcept
    {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].word == word)
                return i;
        return std::nullopt;
    }

    bool operator==(const Dictionary& o) const { return policy_ == o.policy_ && entries_ == o.entries_; }

private:
    struct Node {
        std::int32_t child[2] = {-1, -1};
        std::int32_t entry = -1;
    };

    std::vector<Entry> entries_;
    MatchPolicy policy_ = MatchPolicy::PrefixFree;
    std::vector<Node> nodes_{Node{}};
    std::size_t max_word_ = 0;
    std::size_t max_translate_ = 0;
};

// Dictionary files: "# policy: <name>" then one "word -> translate" per line.

inline void save_dictionary(std::ostream& os, const Dictionary& d)
{
    os << "# policy: " << to_string(d.policy()) << '\n';
    for (const Entry& e : d.entries())
        os << e.word << " -> " << e.translate << '\n';
}

inline Dictionary load_dictionary(std::istream& is)
{
    std::optional<MatchPolicy> policy;
    std::vector<Entry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.starts_with("#")) {
            const std::string_view key = "# policy:";
            if (line.starts_with(key)) {
                std::string v = line.substr(key.size());
                v.erase(0, v.find_first_not_of(' '));
                policy = parse_policy(v);
            }
            continue;
        }
        const auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw std::invalid_argument("dictionary line " + std::to_string(lineno) + ": missing '->'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        entries.push_back({trim(line.substr(0, arrow)), trim(line.substr(arrow + 2))});
    }
    if (!policy)
        throw std::invalid_argument("dictionary: missing '# policy:' header");
    return Dictionary(std::move(entries), *policy);
}

} // namespace maharaja
