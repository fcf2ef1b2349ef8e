#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "maharaja/codec.hpp"
#include "maharaja/rewriter.hpp"
#include "naive.hpp"

using namespace maharaja;

namespace {

std::vector<std::pair<std::string, std::string>> as_pairs(const Dictionary& d)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const Entry& e : d.entries())
        out.emplace_back(e.word, e.translate);
    return out;
}

std::string random_bits(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    std::uniform_int_distribution<std::size_t> len(lo, hi);
    std::string s(len(rng), '0');
    for (char& c : s)
        c = rng() & 1 ? '1' : '0';
    return s;
}

} // namespace

TEST(Run, Examples)
{
    const Dictionary stop({{"11", "00"}}, MatchPolicy::PrefixFree);
    const RunResult a = run(stop, "00", 10);
    EXPECT_EQ(a.status, RunStatus::Terminated);
    EXPECT_EQ(a.state.steps, 0u);
    EXPECT_EQ(a.output(), "00");

    const Dictionary grow({{"1", "0"}, {"0", "10"}}, MatchPolicy::LongestMatch);
    const RunResult b = run(grow, "1", 3);
    EXPECT_EQ(b.status, RunStatus::Budget);
    EXPECT_EQ(b.state.string, "10100");
    EXPECT_EQ(b.state.head, 3u);
    EXPECT_FALSE(b.output().has_value());
}

TEST(Run, ScanSkipsUnmatchedBits)
{
    const Dictionary d({{"11", "0"}}, MatchPolicy::PrefixFree);
    const RunResult r = run(d, "0011", 5);
    ASSERT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.trace[0], (RewriteStep{0, 2, 4, 2}));
    EXPECT_EQ(r.output(), "00110");
    const RunResult h = run(d, "0011", 5, ReaderMode::MatchAtHead);
    EXPECT_EQ(h.state.steps, 0u);
}

TEST(Run, DefaultReaderFollowsPolicy)
{
    EXPECT_EQ(default_reader(maharaja_dictionary()), ReaderMode::ScanForward);
    EXPECT_EQ(default_reader(dictionary_23()), ReaderMode::MatchAtHead);
    EXPECT_THROW(run(dictionary_23(), "", 1), std::invalid_argument);
    EXPECT_THROW(run(dictionary_23(), "012", 1), std::invalid_argument);
}

TEST(Run, BudgetMonotoneAndResumable)
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        const Dictionary d({{"0", random_bits(rng, 0, 3)}, {"10", random_bits(rng, 0, 4)}, {"11", random_bits(rng, 1, 3)}},
                           MatchPolicy::PrefixFree);
        const std::string start = random_bits(rng, 1, 6);
        const RunResult k = run(d, start, 7);
        const RunResult k1 = run(d, start, 8);
        EXPECT_TRUE(k1.state.string.starts_with(k.state.string));
        EXPECT_LE(k.state.steps, k1.state.steps);
        const RunResult more = resume(d, k.state, 5);
        EXPECT_EQ(more.state, run(d, start, 12).state);
    }
}

TEST(Run, AgreesWithNaiveProcess)
{
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
        std::vector<Entry> e;
        std::set<std::string> words;
        while (e.size() < 3) {
            const std::string w = random_bits(rng, 1, 3);
            if (words.insert(w).second)
                e.push_back({w, random_bits(rng, 0, 5)});
        }
        const Dictionary d(e, MatchPolicy::LongestMatch);
        const std::string start = random_bits(rng, 1, 8);
        for (bool scan : {true, false}) {
            naive::Process ref{as_pairs(d), scan};
            const auto [s, head, steps] = ref.run(start, 20);
            const RunResult r = run(d, start, 20, scan ? ReaderMode::ScanForward : ReaderMode::MatchAtHead);
            EXPECT_EQ(r.state.string, s);
            EXPECT_EQ(r.state.head, head);
            EXPECT_EQ(r.state.steps, steps);
        }
    }
}

TEST(Run, AgreesWithGenerator)
{
    const RunResult r = resume(dictionary_23(), {"0100011100000", 8, 0}, 5);
    EXPECT_EQ(r.state.string, "01000111000001010101010001100");
    EXPECT_EQ(r.state.string,
              generate_bitstring(dictionary_23(), "0100011100000", 8, ~u64{0}, 5).bits);
    EXPECT_EQ(run(dictionary_23(), "0", 5).state.string, "010010100");
}

TEST(MulTable, Validation)
{
    EXPECT_THROW(MulTable("S", {}), std::invalid_argument);
    EXPECT_THROW(MulTable("SAA", {}), std::invalid_argument);
    EXPECT_THROW(MulTable("SA", {{{'S', 'X'}, 'A'}}), std::invalid_argument);
    EXPECT_THROW(MulTable("SA", {{{'S', 'A'}, 'S'}}), std::invalid_argument);
    EXPECT_TRUE(MulTable::example_table().total());
    EXPECT_FALSE(MulTable::example_table().without('B', 'B').total());
}

TEST(Triangle, ExampleRows)
{
    const auto rows = triangle(MulTable::example_table(), 8);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0], "S");
    EXPECT_EQ(rows[1], "SS");
    EXPECT_EQ(rows[2], "SAS");
    EXPECT_EQ(rows[3], "SBCS");
    EXPECT_EQ(rows[7], "SBCABBCS");
}

TEST(Triangle, ConstantTable)
{
    const auto rows = triangle(MulTable::constant("SX", 'X'), 5);
    EXPECT_EQ(rows[4], "SXXXS");
    EXPECT_TRUE(triangle(MulTable::constant("SX", 'X'), 0).empty());
}

TEST(Triangle, AgreesWithNaive)
{
    const MulTable t = MulTable::example_table();
    EXPECT_EQ(triangle(t, 60), naive::triangle(t.products(), 'S', 60));
}

TEST(Triangle, MissingProductNamesTheRow)
{
    const MulTable t = MulTable::example_table();
    const auto full = triangle(t, 40);
    u64 first = 0;
    while (full[first].find("BB") == std::string::npos)
        ++first;
    try {
        triangle(t.without('B', 'B'), 40);
        FAIL() << "expected MissingProduct";
    } catch (const MissingProduct& e) {
        EXPECT_EQ(e.x(), 'B');
        EXPECT_EQ(e.y(), 'B');
        EXPECT_EQ(e.row(), first);
    }
}

TEST(Encode, ExampleRules)
{
    const EncodedTable enc = encode_table(MulTable::example_table());
    EXPECT_EQ(enc.dictionary.size(), 16u);
    EXPECT_EQ(enc.codec.width(), 2u);
    // SS -> S A A S
    EXPECT_EQ(enc.dictionary.entries()[0], (Entry{"0000", "00010100"}));
    // SA -> S B B
    EXPECT_EQ(enc.dictionary.entries()[1], (Entry{"0001", "001010"}));
    // AS -> C C S
    EXPECT_EQ(enc.dictionary.entries()[4], (Entry{"0100", "111100"}));
    // AB -> A A
    EXPECT_EQ(enc.dictionary.entries()[6], (Entry{"0110", "0101"}));
}

TEST(Encode, SmallTable)
{
    const EncodedTable enc = encode_table(MulTable::constant("SX", 'X'));
    EXPECT_EQ(enc.dictionary.size(), 4u);
    EXPECT_EQ(enc.codec.width(), 1u);
    const EncodedTable part = encode_table(MulTable::constant("SX", 'X').without('X', 'S'));
    EXPECT_EQ(part.dictionary.size(), 3u);
}

TEST(Codec, RoundTrip)
{
    std::mt19937_64 rng(3);
    for (const std::string al : {"SA", "SAB", "SABC", "SABCDEFGH"}) {
        const SymbolCodec c(al);
        for (int i = 0; i < 50; ++i) {
            std::string s;
            for (int k = 0; k < 12; ++k)
                s.push_back(al[rng() % al.size()]);
            EXPECT_EQ(c.decode(c.encode(s)), s);
        }
    }
    EXPECT_THROW(SymbolCodec("SAB").decode("11"), std::invalid_argument);
    EXPECT_THROW(SymbolCodec("SAB").encode("Z"), std::invalid_argument);
}

TEST(Encode, FirstSteps)
{
    const EncodedTable enc = encode_table(MulTable::example_table());
    const RunResult r = run(enc.dictionary, enc.codec.encode("SS"), 5);
    EXPECT_EQ(enc.codec.decode(r.state.string), "SSSAASSBBCCSSBBCC");
    // Rows SS through SBBCCAACCS need 1 + 2 + 3 + 4 reads.
    const RunResult ten = run(enc.dictionary, enc.codec.encode("SS"), 10);
    EXPECT_EQ(enc.codec.decode(ten.state.string), "SSSAASSBBCCSSBBCCAASSBBCCAACCS");
}

TEST(Encode, DecodeRows)
{
    EXPECT_EQ(decode_rows("SSSAASSBBCCS", 'S'), (std::vector<std::string>{"SS", "SAS", "SBCS"}));
    EXPECT_EQ(decode_rows("SSSAA", 'S'), (std::vector<std::string>{"SS"}));
    EXPECT_THROW(decode_rows("SSSABS", 'S'), std::invalid_argument);
    EXPECT_THROW(decode_rows("ASS", 'S'), std::invalid_argument);
}

TEST(Encode, ProcessReproducesTriangle)
{
    const EncodingReport rep = verify_encoding(MulTable::example_table(), 200);
    EXPECT_TRUE(rep.rows_match);
    EXPECT_EQ(rep.decoded.size(), 200u);
    EXPECT_EQ(rep.max_skip, 0u);
    EXPECT_EQ(rep.unused, (std::vector<std::pair<char, char>>{{'S', 'C'}, {'B', 'S'}}));
    const EncodingReport c = verify_encoding(MulTable::constant("SXY", 'Y'), 30);
    EXPECT_TRUE(c.rows_match);
}

TEST(TableFile, RoundTrip)
{
    const MulTable t = MulTable::example_table().without('C', 'C');
    std::stringstream ss;
    save_table(ss, t);
    EXPECT_TRUE(ss.str().starts_with("multable v1 alphabet=SABC\n"));
    const MulTable u = load_table(ss);
    EXPECT_EQ(u.alphabet(), t.alphabet());
    EXPECT_EQ(u.products(), t.products());
    std::stringstream bad("multable v1 alphabet=SA\nS A B\n");
    EXPECT_THROW(load_table(bad), std::invalid_argument);
}
