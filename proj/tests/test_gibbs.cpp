#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "pressurelab/demos.hpp"
#include "pressurelab/error.hpp"
#include "pressurelab/gibbs.hpp"
#include "pressurelab/pressure.hpp"

using namespace pressurelab;

TEST_CASE("level weights are normalized") {
    for (const char* name : {"golden", "ex35", "ex36", "goldenmean_sft"})
        for (double q : {0.5, 1.0, 2.0}) {
            const auto t = level_weights(demo_family(name), 8, q, 0.0);
            CHECK(std::fabs(t.total() - 1.0) <= 1e-12);
        }
}

TEST_CASE("level weights match direct computation") {
    const auto sys = oracle::random_system(7, 3, 2);
    const auto fam = oracle::family(sys);
    const auto t = level_weights(fam, 5, 1.5, 0.0);
    const auto ws = oracle::words(sys, 5);
    long double total = 0;
    for (const auto& w : ws) total += std::pow(oracle::norm(sys, w), 1.5L);
    REQUIRE(t.size() == ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i)
        CHECK(t.weights[i] == doctest::Approx(static_cast<double>(std::pow(oracle::norm(sys, ws[i]), 1.5L) / total))
                                  .epsilon(1e-12));
}

TEST_CASE("negative q drops vanishing words") {
    const auto sys = oracle::random_system(99, 2, 2);
    const auto fam = oracle::family(sys);
    const auto t = level_weights(fam, 6, -1.0, 0.0);
    std::size_t nonzero = 0;
    for (const auto& w : oracle::words(sys, 6)) nonzero += oracle::norm(sys, w) > 0;
    CHECK(t.size() == nonzero);
    CHECK(std::fabs(t.total() - 1.0) <= 1e-12);
}

TEST_CASE("marginals are exact") {
    const auto sys = oracle::golden();
    const auto fam = demo_family("golden");
    const double q = 1.3;
    const auto top = level_weights(fam, 9, q, 0.0);
    const auto m4 = marginalize(top, 4);
    // direct sums of level-9 norms over each 4-prefix
    std::map<std::vector<int>, long double> mass;
    long double total = 0;
    for (const auto& w : oracle::words(sys, 9)) {
        const long double x = std::pow(oracle::norm(sys, w), static_cast<long double>(q));
        mass[std::vector<int>(w.begin(), w.begin() + 4)] += x;
        total += x;
    }
    REQUIRE(m4.size() == mass.size());
    std::size_t i = 0;
    for (const auto& [prefix, v] : mass) {
        for (int k = 0; k < 4; ++k) CHECK(m4.word(i)[k] == prefix[k]);
        CHECK(m4.weights[i] == doctest::Approx(static_cast<double>(v / total)).epsilon(1e-12));
        ++i;
    }
    CHECK(std::fabs(m4.total() - 1.0) <= 1e-12);
}

TEST_CASE("marginalizing in stages is the same as in one go") {
    const auto top = level_weights(demo_family("ex36"), 10, 2.0, 0.0);
    const auto a = marginalize(top, 3);
    const auto b = marginalize(marginalize(top, 6), 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.weights[i] == b.weights[i]);
    const auto c = marginal_weights(demo_family("ex36"), 3, 10, 2.0);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.weights[i] == c.weights[i]);
}

TEST_CASE("find locates words by binary search") {
    const auto t = level_weights(demo_family("goldenmean_sft"), 5, 1.0, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.find(t.word(i)) == i);
    const Symbol bad[5] = {1, 1, 0, 0, 0};
    CHECK(t.find(bad) == GibbsTable::npos);
}

TEST_CASE("samples follow the table (chi-square)") {
    const auto fam = demo_family("golden");
    const auto t = level_weights(fam, 4, 1.0, 0.0);
    const std::size_t draws = 40000;
    const auto words = sample_words(t, draws, 2024);
    std::vector<double> counts(t.size(), 0.0);
    for (const auto& w : words) {
        const auto k = t.find(w.symbols.data());
        REQUIRE(k != GibbsTable::npos);
        counts[k] += 1;
    }
    double chi2 = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = draws * t.weights[i];
        chi2 += (counts[i] - e) * (counts[i] - e) / e;
    }
    // 80 degrees of freedom; 0.1% critical value is about 124.8
    CHECK(chi2 < 124.8);
}

TEST_CASE("sampling is reproducible and thread independent") {
    const auto fam = demo_family("golden");
    const auto a = sample_words(fam, 8, 1.0, 500, 7, Exec{1});
    const auto b = sample_words(fam, 8, 1.0, 500, 7, Exec{8});
    CHECK(a == b);
    CHECK(sample_words(fam, 8, 1.0, 500, 8) != a);
}

TEST_CASE("Gibbs ratios on the golden-ratio system") {
    const auto fam = demo_family("golden");
    const double p = pressure_exact_integer(fam, 1).estimate;
    const auto d = gibbs_ratio_diagnostics(fam, 4, 10, 1.0, p);
    CHECK(d.count == 81);
    CHECK(d.excluded == 0);
    CHECK(d.min_ratio > 0);
    CHECK(d.min_ratio <= d.q25);
    CHECK(d.q25 <= d.median);
    CHECK(d.median <= d.q75);
    CHECK(d.q75 <= d.max_ratio);
    CHECK_THROWS_AS(gibbs_ratio_diagnostics(fam, 4, 7, 1.0, p), Error);
}

TEST_CASE("quasi-Bernoulli ratios against direct computation") {
    const auto sys = oracle::random_system(3, 2, 2);
    const auto fam = oracle::family(sys);
    const int n = 2, l = 2, N = 6;
    const auto qb = quasi_bernoulli_diagnostics(fam, n, l, N, 1.0);
    std::map<std::vector<int>, long double> joint, head, tail;
    long double total = 0;
    for (const auto& w : oracle::words(sys, N)) {
        const long double x = oracle::norm(sys, w);
        joint[std::vector<int>(w.begin(), w.begin() + n + l)] += x;
        head[std::vector<int>(w.begin(), w.begin() + n)] += x;
        tail[std::vector<int>(w.begin(), w.begin() + l)] += x;
        total += x;
    }
    double lo = 1e300, hi = 0;
    for (const auto& [w, v] : joint) {
        const auto a = head[std::vector<int>(w.begin(), w.begin() + n)];
        const auto b = tail[std::vector<int>(w.begin() + n, w.end())];
        if (v == 0 || a == 0 || b == 0) continue;
        const double r = static_cast<double>(v * total / (a * b));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(qb.upper.max_ratio == doctest::Approx(hi).epsilon(1e-10));
    CHECK(qb.upper.min_ratio == doctest::Approx(lo).epsilon(1e-10));
    CHECK(qb.lower.max_ratio == doctest::Approx(1 / lo).epsilon(1e-10));
}

TEST_CASE("shift-invariance defect against direct computation") {
    const auto sys = oracle::random_system(4, 2, 2);
    const auto fam = oracle::family(sys);
    const int n = 3, N = 7;
    std::map<std::vector<int>, long double> cyl, pre;
    long double total = 0;
    for (const auto& w : oracle::words(sys, N)) {
        const long double x = oracle::norm(sys, w);
        cyl[std::vector<int>(w.begin(), w.begin() + n)] += x;
        pre[std::vector<int>(w.begin() + 1, w.begin() + 1 + n)] += x;
        total += x;
    }
    double ref = 0;
    for (const auto& [w, v] : cyl) ref = std::max(ref, static_cast<double>(std::fabs(pre[w] - v) / total));
    CHECK(shift_invariance_defect(fam, n, N, 1.0) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("Lyapunov statistics") {
    const auto sys = oracle::golden();
    const auto fam = demo_family("golden");
    const int n = 6;
    long double num = 0, den = 0;
    for (const auto& w : oracle::words(sys, n)) {
        const long double x = oracle::norm(sys, w);
        num += x * std::log(x) / n;
        den += x;
    }
    const double exact = static_cast<double>(num / den);
    CHECK(exact_lyapunov_mean(fam, n, 1.0) == doctest::Approx(exact).epsilon(1e-12));
    const auto stats = empirical_lyapunov(fam, sample_words(fam, n, 1.0, 20000, 5));
    CHECK(stats.count == 20000);
    CHECK(std::fabs(stats.mean - exact) < 4 * stats.stddev / std::sqrt(20000.0));
}

TEST_CASE("csv output") {
    const auto t = level_weights(demo_family("scalar"), 2, 1.0, 0.0);
    CHECK(gibbs_csv(t) == "word,weight\n11,0.25\n12,0.25\n21,0.25\n22,0.25\ntotal,1\n");
    const auto d = summarize({1.0, 2.0, 3.0}, "x");
    CHECK(diagnostics_csv({d}) == "context,min,q25,median,q75,max,count\nx,1,1.5,2,2.5,3,3\n");
}
