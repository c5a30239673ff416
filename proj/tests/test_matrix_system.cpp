#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "pressurelab/demos.hpp"
#include "pressurelab/error.hpp"
#include "pressurelab/matrix_system.hpp"

using namespace pressurelab;

namespace {

std::vector<Symbol> to_symbols(const std::vector<int>& w) { return {w.begin(), w.end()}; }

Matrix m2(double a, double b, double c, double d) {
    Matrix x(2, 2);
    x << a, b, c, d;
    return x;
}

}  // namespace

TEST_CASE("word products agree with naive multiplication") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto sys = oracle::random_system(seed, 3, 3);
        const auto fam = oracle::family(sys);
        for (const auto& w : oracle::words(sys, 6)) {
            const Word word{to_symbols(w)};
            const auto p = word_product(fam, word);
            const long double ref = oracle::norm(sys, w);
            if (ref == 0) {
                CHECK(p.zero);
                CHECK(std::isinf(p.log_norm()));
                continue;
            }
            CHECK(p.log_norm() == doctest::Approx(std::log(static_cast<double>(ref))).epsilon(1e-13));
            const auto exact = integer_norm(fam, word);
            REQUIRE(exact);
            CHECK(static_cast<long double>(*exact) == ref);
        }
    }
}

TEST_CASE("norm is submultiplicative") {
    for (std::uint64_t seed = 11; seed <= 15; ++seed) {
        const auto sys = oracle::random_positive_system(seed, 2, 3);
        const auto fam = oracle::family(sys);
        const auto ws = oracle::words(sys, 4);
        for (const auto& a : ws)
            for (const auto& b : ws) {
                const double r = norm_split_ratio(fam, Word{to_symbols(a)}, Word{to_symbols(b)});
                CHECK(r <= 1.0 + 1e-12);
                CHECK(r > 0.0);
            }
    }
}

TEST_CASE("integer norms stay exact far beyond double precision") {
    const auto fam = demo_family("ex36");
    const Word w{std::vector<Symbol>(60, 1)};  // [[1,1],[1,1]]^60 has norm 2^61
    const auto v = integer_norm(fam, w);
    REQUIRE(v);
    CHECK(*v == (static_cast<__int128>(1) << 61));
    CHECK_FALSE(integer_norm(demo_family("golden"), Word{{1}}));  // 0.5 entries
}

TEST_CASE("family validation") {
    const auto full = SubshiftSpec::full_shift(2);
    CHECK_THROWS_AS(MatrixFamily(full, {m2(1, -1, 0, 1), m2(1, 0, 0, 1)}), Error);
    CHECK_THROWS_AS(MatrixFamily(full, {m2(0, 0, 0, 0), m2(1, 0, 0, 1)}), Error);
    CHECK_THROWS_AS(MatrixFamily(full, {m2(1, 0, 0, 1)}), Error);
    CHECK_THROWS_AS(MatrixFamily(full, {m2(NAN, 0, 0, 1), m2(1, 0, 0, 1)}), Error);
    CHECK(MatrixFamily(full, {m2(1, 1, 1, 1), m2(2, 1, 1, 2)}).positive());
    CHECK_FALSE(MatrixFamily(full, {m2(1, 1, 0, 1), m2(2, 1, 1, 2)}).positive());
}

TEST_CASE("H2 on the golden-ratio system") {
    const auto fam = demo_family("golden");
    const auto w = check_h2(fam);
    CHECK(w.satisfied);
    CHECK(w.r == 1);
    CHECK(w.b == doctest::Approx(1.5));
    const Matrix h = bridged_sum(fam, 0, 0, 1);
    CHECK(h(0, 0) == doctest::Approx(2.5));
    CHECK(h(0, 1) == doctest::Approx(1.5));
    CHECK(h(1, 0) == doctest::Approx(1.5));
    CHECK(h(1, 1) == doctest::Approx(2.5));
    CHECK(gluing_constant(fam, w, 1.0) == doctest::Approx(0.5));
    CHECK(gluing_constant(fam, w, 2.0) == doctest::Approx(0.25));
}

TEST_CASE("H2 fails for a reducible sum") {
    const auto w = check_h2(demo_family("ex35"));
    CHECK_FALSE(w.satisfied);
    CHECK_THROWS_AS(gluing_constant(demo_family("ex35"), w, 1.0), Error);
}

TEST_CASE("gluing factor bounds glued norms from below") {
    const auto fam = demo_family("golden");
    const auto w = check_h2(fam);
    const double gamma = gluing_constant(fam, w, 1.0);
    const auto sys = oracle::golden();
    const auto ws = oracle::words(sys, 3);
    for (const auto& a : ws)
        for (const auto& b : ws) {
            long double best = 0;
            for (int k = 0; k < 3; ++k) {
                auto glued = a;
                glued.push_back(k);
                glued.insert(glued.end(), b.begin(), b.end());
                best = std::max(best, oracle::norm(sys, glued));
            }
            CHECK(static_cast<double>(best) >= gamma * static_cast<double>(oracle::norm(sys, a) * oracle::norm(sys, b)) - 1e-12);
        }
}

TEST_CASE("distortion is 1 once the word covers the depth") {
    const SubshiftSpec full = SubshiftSpec::full_shift(2);
    std::vector<Matrix> table{m2(1, 1, 1, 1), m2(1, 2, 1, 1), m2(2, 1, 1, 1), m2(1, 1, 1, 3)};
    const MatrixFamily depth2(full, 2, 2, table);
    CHECK(distortion(depth2, 2) == doctest::Approx(1.0));
    CHECK(distortion(depth2, 1) > 1.0);
    CHECK_THROWS_AS(distortion(demo_family("ex36"), 3), Error);
}

TEST_CASE("depth-2 products take the largest extension") {
    const SubshiftSpec full = SubshiftSpec::full_shift(2);
    std::vector<Matrix> table{m2(1, 0, 0, 1), m2(2, 0, 0, 1), m2(1, 1, 0, 1), m2(1, 0, 0, 3)};
    const MatrixFamily fam(full, 2, 2, table);
    // word "12": factors M_{12} at position 1 then M_{2x}, x free
    const Word w = parse_word("12", 2);
    const auto p = word_product(fam, w);
    double best = 0;
    for (int x = 0; x < 2; ++x) {
        const Matrix prod = table[1] * table[2 + x];
        best = std::max(best, prod.sum());
    }
    CHECK(p.log_norm() == doctest::Approx(std::log(best)));
}

TEST_CASE("scaling and permutation") {
    const auto fam = demo_family("golden");
    const auto s = fam.scaled(3.0);
    CHECK(s.symbol_matrix(0)(0, 0) == doctest::Approx(3.0));
    const auto p = fam.permuted({2, 0, 1});
    CHECK(p.symbol_matrix(2) == fam.symbol_matrix(0));
    CHECK(p.symbol_matrix(0) == fam.symbol_matrix(1));
    CHECK_THROWS_AS(fam.scaled(0.0), Error);
    CHECK(fam.min_entry() == 0.0);
    CHECK(fam.max_entry() == 1.0);
}
