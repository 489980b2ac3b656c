#include "gcx/words.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace gcx;

namespace {

std::vector<Word> members(std::initializer_list<char const *> ws)
{
  return std::vector<Word>(ws.begin(), ws.end());
}

WordSource fib() { return WordSource::fibonacci(); }
WordSource thue() { return WordSource::thue_morse(); }

std::vector<std::pair<std::string, Directive>> directives()
{
  return {{"(1)", Directive{{1}, {1}}},
          {"(2,1)", Directive{{}, {2, 1}}},
          {"(1,2,3)", Directive{{}, {1, 2, 3}}},
          {"3,(1)", Directive{{3}, {1}}},
          {"(4)", Directive{{4}, {4}}}};
}

} // namespace

TEST(Prefix, FibonacciSubstitution)
{
  EXPECT_EQ(fib().prefix(13), "0100101001001");
}

TEST(Prefix, Periodic) { EXPECT_EQ(WordSource::periodic("01").prefix(5), "01010"); }

TEST(Prefix, SturmianAllOnesIsFibonacci)
{
  auto s = WordSource::sturmian(std::vector<std::size_t>{1});
  EXPECT_EQ(s.prefix(13), "0100101001001");
  EXPECT_EQ(s.prefix(5000), fib().prefix(5000));
}

TEST(Prefix, SturmianMatchesMechanicalWord)
{
  for (auto const &[label, d] : directives()) {
    auto s = WordSource::sturmian(d);
    auto expect = oracle::mechanical_prefix(
        [&](std::size_t k) { return d.digit(k); }, 3000);
    EXPECT_EQ(s.prefix(3000), expect) << label;
  }
}

TEST(Prefix, ThueMorseMatchesDigitSum)
{
  EXPECT_EQ(thue().prefix(4096), oracle::thue_morse_prefix(4096));
}

TEST(Prefix, PrefixConsistency)
{
  auto rng = oracle::rng(1);
  std::vector<WordSource> sources{fib(), thue(),
                                  parse_word_spec("sturmian:2,1,(1,3)"),
                                  parse_word_spec("periodic:0110"),
                                  parse_word_spec("subst:0=001,1=10;seed=0")};
  for (auto const &s : sources)
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t a = 1 + rng() % 3000, b = 1 + rng() % 3000;
      if (a > b)
        std::swap(a, b);
      // fresh source, so the long prefix is generated after the short one
      auto fresh = parse_word_spec(s.name());
      auto shorter = fresh.prefix(a);
      EXPECT_EQ(fresh.prefix(b).substr(0, a), shorter) << s.name();
    }
}

TEST(Prefix, Errors)
{
  EXPECT_THROW(fib().prefix(0), input_error);
  EXPECT_THROW(WordSource::substitution({{'0', "10"}, {'1', "0"}}, '0'),
               input_error); // not prolongable
  EXPECT_THROW(WordSource::substitution({{'0', "01"}, {'1', ""}}, '0'),
               input_error); // erasing
  EXPECT_THROW(WordSource::substitution({{'0', "02"}}, '0'), input_error);
  EXPECT_THROW(WordSource::sturmian(std::vector<std::size_t>{}), input_error);
  EXPECT_THROW(WordSource::sturmian(std::vector<std::size_t>{1, 0}), input_error);
  EXPECT_THROW(WordSource::periodic(""), input_error);
  EXPECT_THROW(WordSource::explicit_prefix("0101").prefix(5), input_error);
}

TEST(WordSpec, Grammar)
{
  EXPECT_EQ(parse_word_spec("fib").name(), "fib");
  EXPECT_TRUE(parse_word_spec("fib").is_sturmian());
  EXPECT_EQ(parse_word_spec("tm").aperiodicity(), Aperiodicity::yes_by_theory);
  EXPECT_FALSE(parse_word_spec("tm").is_sturmian());

  auto s = parse_word_spec("sturmian:2,1");
  EXPECT_EQ(s.kind(), SourceKind::sturmian);
  EXPECT_EQ(s.directive().digit(1), 2u);
  EXPECT_EQ(s.directive().digit(7), 1u);
  auto t = parse_word_spec("sturmian:(1,2,3)");
  EXPECT_EQ(t.directive().digit(5), 2u);
  EXPECT_EQ(t.prefix(18), "010100101001010010");
  EXPECT_EQ(parse_word_spec("sturmian:(2,1)").prefix(18), "001000100010010001");

  auto p = parse_word_spec("periodic:01");
  EXPECT_EQ(p.aperiodicity(), Aperiodicity::no);
  auto e = parse_word_spec("prefix:0010");
  EXPECT_EQ(e.aperiodicity(), Aperiodicity::unknown);
  EXPECT_EQ(e.max_length(), 4u);
  auto f = parse_word_spec("subst:0=01,1=0;seed=0");
  EXPECT_EQ(f.prefix(13), "0100101001001");
  EXPECT_EQ(f.aperiodicity(), Aperiodicity::unknown);

  for (auto bad : {"", "fibo", "sturmian:", "sturmian:1,x", "sturmian:1,(2",
                   "sturmian:0", "periodic:", "prefix:", "subst:0=01",
                   "subst:0=01,1=0;seed=2", "subst:0=01,0=0;seed=0", "other:1"})
    EXPECT_THROW(parse_word_spec(bad), input_error) << bad;
}

TEST(Factors, FibonacciFour)
{
  auto fs = factors(fib(), 4);
  EXPECT_EQ(fs.members, members({"0010", "0100", "0101", "1001", "1010"}));
  EXPECT_EQ(fs.n, 4u);
  EXPECT_GE(fs.source_prefix_length, 4096u);
}

TEST(Factors, Periodic)
{
  EXPECT_EQ(factors(WordSource::periodic("01"), 3).members, members({"010", "101"}));
}

TEST(Factors, ThueMorseFourHasTen)
{
  EXPECT_EQ(factors(thue(), 4).size(), 10u);
}

TEST(Factors, AgreeWithOracleWindows)
{
  auto long_tm = oracle::thue_morse_prefix(1 << 16);
  for (std::size_t n = 1; n <= 16; ++n) {
    auto expect = oracle::windows(long_tm, n);
    auto fs = factors(thue(), n);
    EXPECT_EQ(std::set<Word>(fs.members.begin(), fs.members.end()), expect) << n;
  }
  for (auto const &[label, d] : directives()) {
    auto w = oracle::mechanical_prefix([&](std::size_t k) { return d.digit(k); },
                                       20000);
    for (std::size_t n = 1; n <= 25; ++n) {
      auto fs = factors(WordSource::sturmian(d), n);
      EXPECT_EQ(std::set<Word>(fs.members.begin(), fs.members.end()),
                oracle::windows(w, n))
          << label << " n=" << n;
    }
  }
}

TEST(Factors, SortedDistinctOfLengthN)
{
  for (std::size_t n = 1; n <= 12; ++n) {
    auto fs = factors(thue(), n);
    EXPECT_TRUE(std::is_sorted(fs.members.begin(), fs.members.end()));
    EXPECT_EQ(std::adjacent_find(fs.members.begin(), fs.members.end()),
              fs.members.end());
    for (auto const &u : fs.members)
      EXPECT_EQ(u.size(), n);
  }
}

TEST(Factors, ExplicitPrefixUsesWholeWord)
{
  auto fs = factors(WordSource::explicit_prefix("0010110"), 3);
  EXPECT_EQ(fs.members, members({"001", "010", "011", "101", "110"}));
  EXPECT_EQ(fs.source_prefix_length, 7u);
  EXPECT_THROW(factors(WordSource::explicit_prefix("01"), 3), input_error);
}

TEST(Factors, Errors)
{
  EXPECT_THROW(factors(fib(), 0), input_error);
  FactorOptions tight;
  tight.min_prefix = 8;
  tight.per_length = 1;
  tight.cap = 16;
  // factors of length 10 of tm cannot stabilize inside 16 letters
  EXPECT_THROW(factors(thue(), 10, tight), stabilization_error);
}

TEST(Parikh, Examples)
{
  auto p = parikh("0010");
  EXPECT_EQ(p.count('0'), 3u);
  EXPECT_EQ(p.count('1'), 1u);
  EXPECT_EQ(parikh("").total(), 0u);
  EXPECT_EQ(parikh("").count('0'), 0u);
  EXPECT_EQ(parikh("100101").count('0'), 3u);
  EXPECT_EQ(parikh("100101").count('1'), 3u);
  EXPECT_EQ(parikh("100101").total(), 6u);
}

TEST(Abelian, Examples)
{
  EXPECT_TRUE(abelian_equiv("0101", "1001"));
  EXPECT_FALSE(abelian_equiv("0010", "0101"));
  EXPECT_TRUE(abelian_equiv("0110", "0110"));
  EXPECT_THROW(abelian_equiv("01", "010"), input_error);
}

TEST(Restrict, Examples)
{
  EXPECT_EQ(restrict_to("0101", {1, 2}), "01");
  EXPECT_EQ(restrict_to("0101", {2, 4}), "11");
  EXPECT_EQ(restrict_to("0101", {1, 2, 3, 4}), "0101");
  EXPECT_EQ(restrict_to("0101", {4, 2}), "11");
  EXPECT_THROW(restrict_to("0101", {5}), input_error);
  EXPECT_THROW(restrict_to("0101", {0}), input_error);
}

TEST(Reverse, Examples)
{
  EXPECT_EQ(reverse("0010"), "0100");
  EXPECT_EQ(reverse("010"), "010");
  EXPECT_EQ(reverse(""), "");
  EXPECT_TRUE(is_palindrome("010010"));
  EXPECT_FALSE(is_palindrome("0010"));
}

TEST(Balance, Examples)
{
  EXPECT_TRUE(is_balanced(fib(), 20).balanced);
  auto t = is_balanced(thue(), 2);
  EXPECT_FALSE(t.balanced);
  ASSERT_TRUE(t.witness);
  EXPECT_EQ(t.witness->first, "00");
  EXPECT_EQ(t.witness->second, "11");
  EXPECT_TRUE(is_balanced(WordSource::periodic("0"), 5).balanced);
  EXPECT_THROW(is_balanced(fib(), 0), input_error);
}

TEST(Balance, IffAtMostTwoAbelianClasses)
{
  std::vector<WordSource> sources{fib(), thue(), parse_word_spec("sturmian:(2,1)"),
                                  parse_word_spec("periodic:0011"),
                                  parse_word_spec("periodic:01011"),
                                  parse_word_spec("subst:0=001,1=10;seed=0")};
  for (auto const &s : sources) {
    bool all_small = true;
    for (std::size_t n = 1; n <= 15; ++n) {
      auto fs = factors(s, n);
      std::set<Word> set(fs.members.begin(), fs.members.end());
      all_small = all_small && oracle::parikh_class_count(set) <= 2;
    }
    EXPECT_EQ(is_balanced(s, 15).balanced, all_small) << s.name();
  }
}

TEST(Special, Examples)
{
  auto one = special_factors(fib(), 1);
  EXPECT_EQ(one.left, members({"0"}));
  EXPECT_EQ(one.right, members({"0"}));
  EXPECT_EQ(one.bispecial, members({"0"}));
  EXPECT_EQ(special_factors(fib(), 3).bispecial, members({"010"}));
  auto p = special_factors(WordSource::periodic("01"), 2);
  EXPECT_TRUE(p.left.empty());
  EXPECT_TRUE(p.right.empty());
  EXPECT_TRUE(p.bispecial.empty());
}

TEST(Special, ZeroLengthIsBispecial)
{
  EXPECT_EQ(special_factors(fib(), 0).bispecial, members({""}));
}

TEST(Ladder, Fibonacci)
{
  EXPECT_EQ(bispecial_ladder(fib(), 6), members({"", "0", "010", "010010"}));
  EXPECT_EQ(bispecial_ladder(fib(), 11),
            members({"", "0", "010", "010010", "01001010010"}));
  EXPECT_EQ(bispecial_ladder(fib(), 0), members({""}));
  EXPECT_THROW(bispecial_ladder(thue(), 4), input_error);
}

TEST(Rich, Examples)
{
  auto fs = factors(fib(), 4);
  EXPECT_TRUE(is_rich_in("0101", '1', fs));
  EXPECT_TRUE(is_rich_in("0010", '0', fs));
  EXPECT_FALSE(is_rich_in("0010", '1', fs));
  EXPECT_THROW(is_rich_in("1111", '1', fs), input_error);
}

TEST(SturmianLaws, CountAbelianReversalSpecial)
{
  for (auto const &[label, d] : directives()) {
    auto s = WordSource::sturmian(d);
    for (std::size_t n = 1; n <= 30; ++n) {
      auto fs = factors(s, n);
      EXPECT_EQ(fs.size(), n + 1) << label << " n=" << n;
      std::set<Word> set(fs.members.begin(), fs.members.end());
      EXPECT_EQ(oracle::parikh_class_count(set), 2u) << label << " n=" << n;
      if (n <= 20) {
        for (auto const &u : fs.members)
          EXPECT_TRUE(fs.contains(reverse(u))) << label << " " << u;
      }
      auto sf = special_factors(s, n);
      EXPECT_EQ(sf.left.size(), 1u) << label << " n=" << n;
      EXPECT_EQ(sf.right.size(), 1u) << label << " n=" << n;
    }
    for (auto const &w : bispecial_ladder(s, 30))
      EXPECT_TRUE(is_palindrome(w)) << label << " " << w;
  }
}

TEST(Alphabet, Binary)
{
  EXPECT_EQ(alphabet(fib()), (std::vector<char>{'0', '1'}));
  EXPECT_EQ(alphabet(WordSource::periodic("0")), (std::vector<char>{'0'}));
}
