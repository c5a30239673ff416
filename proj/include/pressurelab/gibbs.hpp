#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pressurelab/enumeration.hpp"

namespace pressurelab {

/// Probability weights on the admissible words of one level, in
/// lexicographic order. Words with vanishing product carry weight 0
/// (q >= 0) or are absent (q < 0).
struct GibbsTable {
    std::size_t n = 0;
    double q = 0.0;
    std::size_t source_level = 0;
    double p_hat = 0.0;
    int alphabet = 0;
    std::vector<Symbol> symbols;  // words, n symbols each
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
    const Symbol* word(std::size_t i) const { return symbols.data() + i * n; }
    double total() const;
    /// Index of `w` or npos.
    std::size_t find(const Symbol* w) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct RatioDiagnostics {
    double min_ratio = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max_ratio = 0.0;
    std::size_t count = 0;
    std::size_t excluded = 0;
    std::string context;

    double spread() const { return max_ratio / min_ratio; }
};

/// Summarizes a list of ratios (sorted internally).
RatioDiagnostics summarize(std::vector<double> ratios, std::string context, std::size_t excluded = 0);

/// nu_{n,q}([I]) = s_n(I,q) / s_n(q).
GibbsTable level_weights(const MatrixFamily& family, std::size_t n, double q, double p_hat, const Exec& exec = {});

/// Table at level N collapsed onto its n-prefixes one level at a time.
GibbsTable marginal_weights(const MatrixFamily& family, std::size_t n, std::size_t N, double q, const Exec& exec = {});

/// Collapses a table onto prefixes of length n < table.n, one level at a time.
GibbsTable marginalize(const GibbsTable& table, std::size_t n);

/// ratio(I) = nu_N([I]) exp(n P_hat) / s_n(I, q) over admissible I of length n.
RatioDiagnostics gibbs_ratio_diagnostics(const MatrixFamily& family, std::size_t n, std::size_t N, double q,
                                         double p_hat, const Exec& exec = {});

struct QuasiBernoulli {
    RatioDiagnostics upper;  // r = nu(IJ) / (nu(I) nu(J))
    RatioDiagnostics lower;  // 1 / r; pairs with nu(IJ) = 0 are counted as excluded
};

QuasiBernoulli quasi_bernoulli_diagnostics(const MatrixFamily& family, std::size_t n, std::size_t l,
                                           std::size_t N, double q, const Exec& exec = {});

/// max_I |nu_N(sigma^{-1}[I]) - nu_N([I])| over admissible I of length n.
double shift_invariance_defect(const MatrixFamily& family, std::size_t n, std::size_t N, double q,
                               const Exec& exec = {});

/// Independent draws from the exact level-n table.
std::vector<Word> sample_words(const MatrixFamily& family, std::size_t n, double q, std::size_t count,
                               std::uint64_t seed, const Exec& exec = {});
std::vector<Word> sample_words(const GibbsTable& table, std::size_t count, std::uint64_t seed);

struct LyapunovStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    std::size_t count = 0;
    std::size_t excluded = 0;  // zero products
};

/// Statistics of (1/n) log ||M_J|| over the words.
LyapunovStats empirical_lyapunov(const MatrixFamily& family, const std::vector<Word>& words);

/// Exact E_nu[(1/n) log ||M_J||] under nu_{n,q}.
double exact_lyapunov_mean(const MatrixFamily& family, std::size_t n, double q, const Exec& exec = {});

/// `word,weight` rows plus a `total,<sum>` footer.
std::string gibbs_csv(const GibbsTable& table);
std::string diagnostics_csv(const std::vector<RatioDiagnostics>& rows);

}  // namespace pressurelab
