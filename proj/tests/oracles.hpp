// Reference computations for the tests. Nothing here calls into the
// library's product, enumeration or summation code.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pressurelab/matrix_system.hpp"

namespace oracle {

struct System {
    int m = 2;
    int d = 2;
    std::vector<int> adjacency;                 // m*m, empty = full shift
    std::vector<std::vector<long double>> mats;  // m entries of d*d, row-major

    bool allowed(int a, int b) const { return adjacency.empty() || adjacency[a * m + b] != 0; }
};

// Every admissible word of length n, lexicographic, by odometer.
inline std::vector<std::vector<int>> words(const System& s, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> w(n, 0);
    for (;;) {
        bool ok = true;
        for (int i = 0; i + 1 < n; ++i)
            if (!s.allowed(w[i], w[i + 1])) ok = false;
        if (ok) out.push_back(w);
        int k = n - 1;
        while (k >= 0 && w[k] == s.m - 1) w[k--] = 0;
        if (k < 0) break;
        ++w[k];
    }
    return out;
}

inline std::vector<long double> product(const System& s, const std::vector<int>& w) {
    const int d = s.d;
    std::vector<long double> acc(d * d, 0.0L);
    for (int i = 0; i < d; ++i) acc[i * d + i] = 1.0L;
    for (int x : w) {
        std::vector<long double> next(d * d, 0.0L);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < d; ++j) next[i * d + j] += acc[i * d + k] * s.mats[x][k * d + j];
        acc = next;
    }
    return acc;
}

inline long double norm(const System& s, const std::vector<int>& w) {
    long double t = 0.0L;
    for (long double v : product(s, w)) t += v;
    return t;
}

// log s_n(q) by direct summation. q < 0 skips vanishing products.
inline double log_partition(const System& s, int n, double q) {
    long double total = 0.0L;
    for (const auto& w : words(s, n)) {
        const long double x = norm(s, w);
        if (x > 0.0L) total += std::pow(x, static_cast<long double>(q));
    }
    return static_cast<double>(std::log(total));
}

inline pressurelab::MatrixFamily family(const System& s) {
    std::vector<std::uint8_t> adj(s.m * s.m, 1);
    if (!s.adjacency.empty())
        for (int i = 0; i < s.m * s.m; ++i) adj[i] = static_cast<std::uint8_t>(s.adjacency[i]);
    std::vector<pressurelab::Matrix> ms;
    for (const auto& mat : s.mats) {
        pressurelab::Matrix x(s.d, s.d);
        for (int i = 0; i < s.d; ++i)
            for (int j = 0; j < s.d; ++j) x(i, j) = static_cast<double>(mat[i * s.d + j]);
        ms.push_back(x);
    }
    return pressurelab::MatrixFamily(pressurelab::SubshiftSpec(s.m, adj), ms);
}

// Small non-negative integer matrices, none identically zero.
inline System random_system(std::uint64_t seed, int m = 2, int d = 2, int max_entry = 3) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> entry(0, max_entry);
    System s;
    s.m = m;
    s.d = d;
    for (int x = 0; x < m; ++x) {
        std::vector<long double> mat(d * d);
        bool nonzero = false;
        while (!nonzero) {
            for (auto& v : mat) {
                v = entry(gen);
                nonzero = nonzero || v > 0;
            }
        }
        s.mats.push_back(mat);
    }
    return s;
}

// Positive real entries in [lo, hi).
inline System random_positive_system(std::uint64_t seed, int m, int d, double lo = 0.2, double hi = 2.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> entry(lo, hi);
    System s;
    s.m = m;
    s.d = d;
    for (int x = 0; x < m; ++x) {
        std::vector<long double> mat(d * d);
        for (auto& v : mat) v = entry(gen);
        s.mats.push_back(mat);
    }
    return s;
}

// ex35: products are diag(2^n, 3^k) with k = number of second symbols.
inline double ex35_log_partition(int n, double q) {
    long double total = 0.0L;
    long double binom = 1.0L;
    for (int k = 0; k <= n; ++k) {
        total += binom * std::pow(std::pow(2.0L, n) + std::pow(3.0L, k), static_cast<long double>(q));
        binom = binom * (n - k) / (k + 1);
    }
    return static_cast<double>(std::log(total));
}

inline double ex35_pressure(double q) {
    return std::max((q + 1.0) * std::log(2.0), std::log1p(std::pow(3.0, q)));
}

inline System ex35() {
    System s;
    s.mats = {{2, 0, 0, 1}, {2, 0, 0, 3}};
    return s;
}

inline System golden() {
    System s;
    s.m = 3;
    s.mats = {{1, 1, 0, 1}, {0.5L, 0.5L, 0.5L, 0.5L}, {1, 0, 1, 1}};
    return s;
}

// Fibonacci count of golden-mean words: F(n+2).
inline std::uint64_t golden_mean_count(int n) {
    std::uint64_t a = 1, b = 2;
    for (int i = 1; i < n; ++i) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return b;
}

}  // namespace oracle
