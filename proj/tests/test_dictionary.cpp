#include <gtest/gtest.h>

#include <sstream>

#include "maharaja/dictionary.hpp"

using namespace maharaja;

TEST(Dictionary, Validation)
{
    EXPECT_THROW(Dictionary({{"", "1"}}, MatchPolicy::LongestMatch), std::invalid_argument);
    EXPECT_THROW(Dictionary({{"0", "2"}}, MatchPolicy::LongestMatch), std::invalid_argument);
    EXPECT_THROW(Dictionary({{"01", "1"}, {"01", "0"}}, MatchPolicy::LongestMatch), std::invalid_argument);
    EXPECT_THROW(Dictionary({{"0", "1"}, {"01", "0"}}, MatchPolicy::PrefixFree), std::invalid_argument);
    EXPECT_NO_THROW(Dictionary({{"0", "1"}, {"01", "0"}}, MatchPolicy::LongestMatch));
    EXPECT_NO_THROW(Dictionary({{"0", ""}}, MatchPolicy::PrefixFree));
}

TEST(Dictionary, LongestMatch)
{
    const Dictionary d({{"0", "10"}, {"1", "0"}, {"01000", "100011100"}, {"01010", "10001100"}},
                       MatchPolicy::LongestMatch);
    EXPECT_EQ(d.match_at("01000", 0), 2u);
    EXPECT_EQ(d.match_at("0100", 0), 0u);
    EXPECT_EQ(d.match_at("01010", 0), 3u);
    EXPECT_EQ(d.match_at("01010", 1), 1u);
    EXPECT_FALSE(d.match_at("0101", 4).has_value());
    EXPECT_TRUE(d.could_extend("0100", 0));
    EXPECT_FALSE(d.could_extend("01000", 0));
    EXPECT_EQ(d.max_word_length(), 5u);
    EXPECT_EQ(d.max_translate_length(), 9u);
    EXPECT_EQ(d.find("01010"), 3u);
    EXPECT_FALSE(d.find("11").has_value());
}

TEST(Dictionary, PrefixFreeUniqueMatch)
{
    const Dictionary d({{"00", "1"}, {"01", "0"}, {"1", "11"}}, MatchPolicy::PrefixFree);
    EXPECT_EQ(d.match_at("0010", 0), 0u);
    EXPECT_EQ(d.match_at("0010", 2), 2u);
    EXPECT_EQ(d.match_at("0010", 3), std::nullopt);
    EXPECT_TRUE(d.could_extend("0010", 3));
}

TEST(Dictionary, PolicyNames)
{
    EXPECT_EQ(parse_policy("prefix-free"), MatchPolicy::PrefixFree);
    EXPECT_EQ(parse_policy("longest-match"), MatchPolicy::LongestMatch);
    EXPECT_EQ(to_string(MatchPolicy::LongestMatch), "longest-match");
    EXPECT_THROW(parse_policy("first"), std::invalid_argument);
}

TEST(DictionaryFile, RoundTrip)
{
    const Dictionary d({{"0", "10"}, {"1", "0"}, {"01000", "100011100"}}, MatchPolicy::LongestMatch);
    std::stringstream ss;
    save_dictionary(ss, d);
    EXPECT_EQ(ss.str(), "# policy: longest-match\n0 -> 10\n1 -> 0\n01000 -> 100011100\n");
    EXPECT_EQ(load_dictionary(ss), d);
}

TEST(DictionaryFile, CommentsBlankLinesAndEmptyTranslate)
{
    std::stringstream ss("# a note\n# policy: prefix-free\n\n 11 ->  \n10 -> 0\r\n");
    const Dictionary d = load_dictionary(ss);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.entries()[0].word, "11");
    EXPECT_EQ(d.entries()[0].translate, "");
    EXPECT_EQ(d.entries()[1].translate, "0");
}

TEST(DictionaryFile, Rejections)
{
    std::stringstream nohdr("0 -> 1\n");
    EXPECT_THROW(load_dictionary(nohdr), std::invalid_argument);
    std::stringstream noarrow("# policy: prefix-free\n0 1\n");
    EXPECT_THROW(load_dictionary(noarrow), std::invalid_argument);
    std::stringstream notfree("# policy: prefix-free\n0 -> 1\n01 -> 1\n");
    EXPECT_THROW(load_dictionary(notfree), std::invalid_argument);
}
