#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "pressurelab/matrix_system.hpp"

namespace pressurelab {

/// Execution settings shared by the enumeration-backed operations.
/// Results never depend on `threads`.
struct Exec {
    unsigned threads = 1;
    std::uint64_t word_budget = std::uint64_t{1} << 26;
};

/// Log-norms of every admissible word of one length, in lexicographic order.
struct WordTable {
    std::size_t length = 0;
    int alphabet = 0;
    std::size_t count = 0;
    std::vector<Symbol> symbols;   // count * length, empty unless words were kept
    std::vector<double> log_sup;   // log max_x ||M||, -inf when zero
    std::vector<double> log_inf;   // log min over nonzero extensions; empty for depth 1
    std::vector<std::uint8_t> zero;
    std::size_t zero_count = 0;

    const Symbol* word(std::size_t i) const { return symbols.data() + i * length; }
    bool has_words() const noexcept { return !symbols.empty() || count == 0; }

    /// log s_n(I, q): sup over the cylinder of ||.||^q. Undefined for zero words.
    double log_term(std::size_t i, double q) const {
        if (q < 0 && !log_inf.empty()) return q * log_inf[i];
        return q * log_sup[i];
    }
};

/// Enumerates level n, partitioned by prefix across `exec.threads`
/// workers and merged in prefix order. Throws ErrorKind::size when the
/// word count exceeds the budget.
WordTable build_table(const MatrixFamily& family, std::size_t n, const Exec& exec, bool keep_words = false);

/// Runs body(begin, end) over [0, count) split into contiguous chunks.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body);

/// Pairwise summation with a split tree fixed by the element count.
double pairwise_sum(const double* values, std::size_t count);

/// log sum exp(x_i) with max shift and pairwise order; -inf for empty input.
double log_sum_exp(const std::vector<double>& x);

}  // namespace pressurelab
