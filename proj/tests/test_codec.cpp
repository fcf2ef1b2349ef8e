#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "maharaja/codec.hpp"

using namespace maharaja;

namespace {

const OutcomeGrid& maharaja_grid()
{
    static const OutcomeGrid g = compute_grid(Ruleset::maharaja(), 3000);
    return g;
}

const OutcomeGrid& grid_23()
{
    static const OutcomeGrid g = compute_grid(Ruleset::klm(2, 3), 3000);
    return g;
}

Bits maharaja_generated(u64 target)
{
    const LearnResult lr = learn_dictionary(maharaja_grid(), LearnMode::Maharaja);
    return generate_bitstring(maharaja_dictionary(), lr.seed, lr.first_start, target).bits;
}

} // namespace

TEST(BitString, Examples)
{
    const Bits m = bitstring_from_grid(maharaja_grid()).bits;
    EXPECT_EQ(m.substr(0, 8), "00010110");
    EXPECT_EQ(m.substr(8, 26), "00100100101100010010011000");
    EXPECT_EQ(bitstring_from_grid(grid_23()).bits.substr(1, 8), "01000111");
    EXPECT_EQ(bitstring_from_grid(compute_grid(Ruleset::wythoff(), 30)).bits.substr(0, 8), "00100101");
}

TEST(BitString, ZeroCounts)
{
    EXPECT_EQ(zero_prefix("0110"), (std::vector<u64>{0, 1, 1, 1, 2}));
    EXPECT_EQ(count_zeros("00100"), 4u);
    EXPECT_EQ(translate_length("00100"), 9u);
    EXPECT_EQ(translate_length("1"), 1u);
}

TEST(BitString, FileRoundTrip)
{
    const BitString b{Ruleset::klm(2, 3), 0, "0100011100"};
    std::stringstream ss;
    save_bitstring(ss, b);
    EXPECT_EQ(ss.str(), "bits v1 ruleset=klm:2,3 start=0 len=10\n0100011100\n");
    const BitString c = load_bitstring(ss);
    EXPECT_EQ(c.ruleset, b.ruleset);
    EXPECT_EQ(c.bits, b.bits);
    std::stringstream bad("bits v1 ruleset=maharaja start=0 len=3\n0101\n");
    EXPECT_THROW(load_bitstring(bad), std::runtime_error);
    std::stringstream junk("bits v1 ruleset=maharaja start=0 len=3\n0x1\n");
    EXPECT_THROW(load_bitstring(junk), std::runtime_error);
}

TEST(Sectors, TrackerExample)
{
    // Wythoff: every prefix is covered and each new diff lands in the new column.
    SectorTracker t;
    EXPECT_FALSE(t.feed(0, 0));
    EXPECT_FALSE(t.feed(1, 2));
    EXPECT_TRUE(t.feed(2, 1));
    EXPECT_TRUE(t.state().covered());
    EXPECT_TRUE(t.relaxed_start(3, 5));
    EXPECT_FALSE(t.relaxed_start(3, 6));
}

TEST(Learn, MaharajaTraceAndSeed)
{
    const LearnResult lr = learn_dictionary(maharaja_grid(), LearnMode::Maharaja);
    EXPECT_TRUE(lr.found_boundary);
    EXPECT_EQ(lr.first_start, 8u);
    EXPECT_EQ(lr.seed, "0001011000100");
    ASSERT_GE(lr.trace.size(), 3u);
    EXPECT_EQ(lr.trace[0], (TraceEntry{"00100", "100101100", 8, 13}));
    EXPECT_EQ(lr.trace[1], (TraceEntry{"1", "0", 13, 22}));
    EXPECT_EQ(lr.trace[2], (TraceEntry{"0010110", "10010011000", 14, 23}));
    EXPECT_TRUE(lr.conflicts.empty());
}

TEST(Learn, MaharajaWithinKnownDictionary)
{
    const LearnResult lr = learn_dictionary(maharaja_grid(), LearnMode::Maharaja);
    const Dictionary full = maharaja_dictionary();
    std::set<std::string> learned;
    for (const Entry& e : lr.dictionary.entries()) {
        const auto i = full.find(e.word);
        ASSERT_TRUE(i.has_value()) << e.word;
        EXPECT_EQ(full.entries()[*i].translate, e.translate);
        learned.insert(e.word);
    }
    for (auto w : kObservedMaharajaWords)
        EXPECT_TRUE(learned.contains(std::string(w))) << w;
}

TEST(Learn, TwoThreeDictionary)
{
    const LearnResult lr = learn_dictionary(grid_23(), LearnMode::KlmRelaxed);
    EXPECT_EQ(lr.first_start, 9u);
    EXPECT_EQ(lr.seed, "00100011100000");
    EXPECT_TRUE(lr.conflicts.empty());
    std::set<std::pair<Bits, Bits>> got, want;
    for (const Entry& e : lr.dictionary.entries())
        got.insert({e.word, e.translate});
    const Dictionary d23 = dictionary_23();
    for (const Entry& e : d23.entries())
        want.insert({e.word, e.translate});
    EXPECT_EQ(got, want);
    EXPECT_EQ(lr.dictionary.policy(), MatchPolicy::LongestMatch);
}

TEST(Learn, TinyGridHasNoBoundary)
{
    const LearnResult lr = learn_dictionary(compute_grid(Ruleset::maharaja(), 12), LearnMode::Maharaja);
    EXPECT_FALSE(lr.found_boundary);
    EXPECT_FALSE(lr.note.empty());
    EXPECT_EQ(lr.dictionary.size(), 0u);
}

TEST(Learn, BoundariesAreSectorStarts)
{
    const LearnResult lr = learn_dictionary(maharaja_grid(), LearnMode::Maharaja);
    const auto starts = sector_starts(maharaja_grid(), LearnMode::Maharaja);
    const std::set<u64> s(starts.begin(), starts.end());
    for (u64 b : lr.boundaries)
        EXPECT_TRUE(s.contains(b)) << b;
    for (std::size_t i = 0; i + 1 < lr.trace.size(); ++i)
        EXPECT_EQ(lr.trace[i].consume_start + lr.trace[i].word.size(), lr.trace[i + 1].consume_start);
}

TEST(Learn, CoverageAtEveryBoundary)
{
    const OutcomeGrid& g = maharaja_grid();
    const auto starts = sector_starts(g, LearnMode::Maharaja);
    const std::set<u64> s(starts.begin(), starts.end());
    SectorTracker t;
    for (u64 c = 0; c < safe_cutoff(g); ++c) {
        if (s.contains(c)) {
            EXPECT_TRUE(t.state().covered()) << c;
        }
        t.feed(c, g.p_row(c));
    }
}

TEST(KnownDictionary, Facts)
{
    const Dictionary d = maharaja_dictionary();
    EXPECT_EQ(d.size(), 14u);
    EXPECT_EQ(d.max_translate_length(), 16u);
    EXPECT_EQ(d.max_word_length(), 9u);
    EXPECT_EQ(d.policy(), MatchPolicy::PrefixFree);
    for (const Entry& e : d.entries())
        EXPECT_EQ(e.translate.size(), translate_length(e.word)) << e.word;
    EXPECT_TRUE(static_translate_violations(d).empty());
    const Dictionary d23 = dictionary_23();
    for (const Entry& e : d23.entries())
        EXPECT_EQ(e.translate.size(), translate_length(e.word)) << e.word;
}

TEST(KnownDictionary, WordsAndExclusionsPartitionAllStrings)
{
    // Every long enough string begins with exactly one dictionary word or excluded word.
    std::vector<std::string> all;
    const Dictionary m14 = maharaja_dictionary();
    for (const Entry& e : m14.entries())
        all.push_back(e.word);
    for (auto w : kExcludedWords)
        all.emplace_back(w);
    for (unsigned v = 0; v < 512; ++v) {
        std::string s;
        for (int b = 8; b >= 0; --b)
            s.push_back((v >> b) & 1 ? '1' : '0');
        int hits = 0;
        for (const auto& w : all)
            hits += s.starts_with(w);
        EXPECT_EQ(hits, 1) << s;
    }
}

TEST(Generate, TwoThreeFromColumnOne)
{
    // The same string read from column 1: the head starts at column 9.
    const GenerateResult r = generate_bitstring(dictionary_23(), "0100011100000", 8, ~u64{0}, 5);
    EXPECT_EQ(r.bits, "01000111000001010101010001100");
    ASSERT_EQ(r.trace.size(), 5u);
    EXPECT_EQ(r.trace[4].word, "01010");
}

TEST(Generate, StallAndRejections)
{
    const Dictionary d({{"11", "1"}}, MatchPolicy::PrefixFree);
    const GenerateResult r = generate_bitstring(d, "0110", 0, 100);
    ASSERT_TRUE(r.stall.has_value());
    EXPECT_EQ(r.stall->head, 0u);
    EXPECT_EQ(r.stall->context, "0110");
    EXPECT_THROW(generate_bitstring(d, "", 0, 5), std::invalid_argument);
    EXPECT_THROW(generate_bitstring(d, "01", 2, 5), std::invalid_argument);
    EXPECT_THROW(generate_bitstring(d, "0a", 0, 5), std::invalid_argument);
}

TEST(Generate, MaharajaMatchesOracle)
{
    const Bits oracle = bitstring_from_grid(maharaja_grid()).bits;
    const Bits gen = maharaja_generated(oracle.size());
    ASSERT_GE(gen.size(), oracle.size());
    EXPECT_EQ(gen.substr(0, oracle.size()), oracle);
}

TEST(Generate, TwoThreeMatchesOracle)
{
    const Bits oracle = bitstring_from_grid(grid_23()).bits;
    const LearnResult lr = learn_dictionary(grid_23(), LearnMode::KlmRelaxed);
    const Bits gen = generate_bitstring(dictionary_23(), lr.seed, lr.first_start, oracle.size() + 16).bits;
    EXPECT_EQ(gen.substr(0, oracle.size()), oracle);
}

TEST(Generate, TranslatesAreContiguous)
{
    const LearnResult lr = learn_dictionary(maharaja_grid(), LearnMode::Maharaja);
    const GenerateResult r = generate_bitstring(maharaja_dictionary(), lr.seed, lr.first_start, 20000);
    const auto z = zero_prefix(r.bits);
    for (const TraceEntry& t : r.trace)
        EXPECT_EQ(t.append_start, t.consume_start + z[t.consume_start]);
    // The string grows: the translate outruns the word.
    EXPECT_LT(r.head, r.bits.size());
}

TEST(Verify, MaharajaDictionaryOnOracle)
{
    const BitString ref = bitstring_from_grid(maharaja_grid());
    const VerificationReport v = verify_dictionary(maharaja_dictionary(), ref, 8);
    EXPECT_TRUE(v.ok());
    EXPECT_GT(v.words_checked, 100u);
}

TEST(Verify, DetectsWrongTranslate)
{
    std::vector<Entry> e = maharaja_dictionary().entries();
    e[0].translate = "1";
    const Dictionary bad(e, MatchPolicy::PrefixFree);
    const VerificationReport v = verify_dictionary(bad, bitstring_from_grid(maharaja_grid()), 8);
    EXPECT_FALSE(v.ok());
    EXPECT_FALSE(v.mismatches.empty());
}

TEST(Exclusions, NoneInGeneratedString)
{
    const LearnResult lr = learn_dictionary(maharaja_grid(), LearnMode::Maharaja);
    const GenerateResult r = generate_bitstring(maharaja_dictionary(), lr.seed, lr.first_start, 34000);
    const ExclusionReport rep = check_exclusions(maharaja_dictionary(), r.bits, r.trace);
    EXPECT_TRUE(rep.ok());
    EXPECT_GT(rep.word_starts_checked, 1000u);
}

TEST(Exclusions, StaticRules)
{
    EXPECT_EQ(longest_run("0110001", '0'), 3u);
    const Dictionary d({{"1", "0000"}, {"01", "110"}, {"00", "11111000"}, {"000", "101"}},
                       MatchPolicy::LongestMatch);
    const auto v = static_translate_violations(d);
    EXPECT_EQ(v.size(), 8u);
}

TEST(Census, CountsWordStartsBelowLimit)
{
    const Dictionary d = dictionary_23();
    const std::vector<TraceEntry> tr{{"0", "10", 3, 4}, {"1", "0", 4, 6}, {"0", "10", 5, 7}, {"0", "10", 9, 9}};
    EXPECT_EQ(census(d, tr, 9), (std::vector<u64>{2, 1, 0, 0}));
}

TEST(LocalPattern, MatchesOracle)
{
    for (auto [rs, mode] : {std::pair{Ruleset::maharaja(), LearnMode::Maharaja},
                            std::pair{Ruleset::klm(2, 3), LearnMode::KlmRelaxed}}) {
        const OutcomeGrid& g = mode == LearnMode::Maharaja ? maharaja_grid() : grid_23();
        const LearnResult lr = learn_dictionary(g, mode);
        u64 checked = 0;
        for (const TraceEntry& t : lr.trace) {
            const auto p = local_pattern(t.word, t.translate, rs);
            ASSERT_TRUE(p.has_value()) << t.word;
            for (auto [c, y] : *p) {
                if (t.append_start + y >= g.bound())
                    continue;
                EXPECT_EQ(g.p_row(t.consume_start + c), t.append_start + y) << rs.id() << " " << t.word;
                ++checked;
            }
        }
        EXPECT_GT(checked, 100u);
        EXPECT_NO_THROW(word_patterns(mode == LearnMode::Maharaja ? maharaja_dictionary() : dictionary_23(), rs));
    }
}

TEST(LocalPattern, RejectsImpossibleTranslate)
{
    EXPECT_FALSE(local_pattern("0", "00", Ruleset::maharaja()).has_value());
    const auto p = local_pattern("01", "100", Ruleset::maharaja());
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(*p, (std::vector<std::pair<u64, u64>>{{0, 0}}));
}
