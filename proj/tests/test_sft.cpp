#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "pressurelab/error.hpp"
#include "pressurelab/sft.hpp"

using namespace pressurelab;

namespace {
SubshiftSpec golden_mean() { return SubshiftSpec(2, {1, 1, 1, 0}); }
}

TEST_CASE("words parse and print 1-based") {
    const Word w = parse_word("2131", 3);
    CHECK(w.symbols == std::vector<Symbol>{1, 0, 2, 0});
    CHECK(format_word(w, 3) == "2131");
    CHECK_THROWS_AS(parse_word("4", 3), Error);
    CHECK_THROWS_AS(parse_word("0", 3), Error);
    CHECK_THROWS_AS(parse_word("1x", 3), Error);
}

TEST_CASE("large alphabets use dashes") {
    const Word w = parse_word("10-2-12", 12);
    CHECK(w.symbols == std::vector<Symbol>{9, 1, 11});
    CHECK(format_word(w, 12) == "10-2-12");
    CHECK(parse_word(format_word(w, 12), 12) == w);
}

TEST_CASE("adjacency validation") {
    CHECK_THROWS_AS(SubshiftSpec(2, {1, 0, 0, 0}), Error);  // symbol 2 has no successor
    CHECK_THROWS_AS(SubshiftSpec(2, {1, 2, 1, 1}), Error);
    CHECK_THROWS_AS(SubshiftSpec(1, {1}), Error);
    CHECK_THROWS_AS(SubshiftSpec(2, {1, 1, 1}), Error);
    CHECK(SubshiftSpec::full_shift(3).is_full_shift());
    CHECK_FALSE(golden_mean().is_full_shift());
}

TEST_CASE("primitivity") {
    const auto full = is_primitive(SubshiftSpec::full_shift(2));
    CHECK(full.primitive);
    CHECK(*full.exponent == 1);

    const auto gm = is_primitive(golden_mean());
    CHECK(gm.primitive);
    CHECK(*gm.exponent == 2);

    CHECK_FALSE(is_primitive(SubshiftSpec(2, {0, 1, 1, 0})).primitive);

    // Wielandt's matrix attains (m-1)^2 + 1.
    const int m = 4;
    std::vector<std::uint8_t> a(m * m, 0);
    for (int i = 0; i + 1 < m; ++i) a[i * m + i + 1] = 1;
    a[(m - 1) * m + 0] = 1;
    a[(m - 1) * m + 1] = 1;
    const auto w = is_primitive(SubshiftSpec(m, a));
    CHECK(w.primitive);
    CHECK(*w.exponent == (m - 1) * (m - 1) + 1);
}

TEST_CASE("admissibility") {
    const auto spec = golden_mean();
    CHECK(is_admissible(spec, parse_word("1211", 2)));
    CHECK_FALSE(is_admissible(spec, parse_word("122", 2)));
    CHECK(is_admissible(spec, Word{}));
    CHECK_THROWS_AS(is_admissible(spec, Word{{0, 5}}), Error);
}

TEST_CASE("word counts match the adjacency power") {
    for (int n = 1; n <= 20; ++n) CHECK(count_words(golden_mean(), n) == oracle::golden_mean_count(n));
    CHECK(count_words(SubshiftSpec::full_shift(3), 14) == 4782969u);
    CHECK(count_words(SubshiftSpec::full_shift(16), 40) == UINT64_MAX);
}

TEST_CASE("enumeration is lexicographic and agrees with brute force") {
    oracle::System s;
    s.m = 3;
    s.adjacency = {1, 1, 0, 0, 1, 1, 1, 0, 1};
    const SubshiftSpec spec(3, {1, 1, 0, 0, 1, 1, 1, 0, 1});
    for (int n = 1; n <= 7; ++n) {
        const auto mine = enumerate_words(spec, n);
        const auto ref = oracle::words(s, n);
        REQUIRE(mine.size() == ref.size());
        REQUIRE(mine.size() == count_words(spec, n));
        for (std::size_t i = 0; i < ref.size(); ++i)
            for (int k = 0; k < n; ++k) CHECK(mine[i][k] == ref[i][k]);
    }
}

TEST_CASE("word stream restarts and filters by first symbol") {
    const auto spec = golden_mean();
    WordStream stream(spec, 5, Symbol{1});
    Word w;
    std::size_t count = 0;
    while (stream.next(w)) {
        CHECK(w.front() == 1);
        CHECK(is_admissible(spec, w));
        ++count;
    }
    CHECK(count == oracle::golden_mean_count(3));  // 2 forces 1, then any length-3 word starting with 1
    stream.reset();
    std::size_t again = 0;
    while (stream.next(w)) ++again;
    CHECK(again == count);
}

TEST_CASE("bridges") {
    const auto spec = golden_mean();
    // 2 K 2 with |K| <= 2: K = 1, 11
    const auto b = bridges(spec, 1, 1, 2);
    REQUIRE(b.size() == 2);
    CHECK(format_word(b[0], 2) == "1");
    CHECK(format_word(b[1], 2) == "11");
    CHECK(bridges(SubshiftSpec::full_shift(3), 0, 0, 2).size() == 3 + 9);
}

TEST_CASE("concat") {
    CHECK(concat(parse_word("12", 2), parse_word("21", 2)) == parse_word("1221", 2));
}
