#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "pressurelab/sft.hpp"

namespace pressurelab {

inline constexpr int kMaxDim = 16;

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, kMaxDim, kMaxDim>;

/// ||B|| = 1^t B 1.
double norm(const Matrix& b);

/// A matrix product kept as exp(log_scale) * normalized with ||normalized|| = 1.
struct WordProduct {
    double log_scale = 0.0;
    Matrix normalized;
    bool zero = false;

    double log_norm() const;  // -inf when zero
    Matrix value() const;
};

/// Non-negative d x d matrices attached to admissible words of length
/// `depth` (depth 1: one matrix per symbol).
class MatrixFamily {
public:
    /// `matrices[code]` is the matrix of the depth-word with base-m code
    /// `code` (first symbol most significant). Entries for inadmissible
    /// words are ignored and may be empty. Throws ErrorKind::input on
    /// negative entries, all-zero matrices or missing/ill-shaped entries.
    MatrixFamily(SubshiftSpec spec, int depth, int dim, std::vector<Matrix> matrices);

    /// Depth-1 convenience constructor, one matrix per symbol.
    MatrixFamily(SubshiftSpec spec, const std::vector<Matrix>& per_symbol);

    const SubshiftSpec& spec() const noexcept { return spec_; }
    int alphabet() const noexcept { return spec_.alphabet(); }
    int depth() const noexcept { return depth_; }
    int dim() const noexcept { return dim_; }
    bool positive() const noexcept { return positive_; }

    /// Matrix attached to the depth-word starting at `symbols`.
    const Matrix& at(const Symbol* symbols) const { return table_[code(symbols)]; }
    const Matrix& symbol_matrix(Symbol s) const;  // depth 1 only
    const std::vector<Matrix>& table() const noexcept { return table_; }
    std::size_t code(const Symbol* symbols) const;

    /// Same family with every matrix multiplied by c > 0.
    MatrixFamily scaled(double c) const;

    /// Relabels symbols: new symbol perm[s] plays the role of old symbol s.
    MatrixFamily permuted(const std::vector<Symbol>& perm) const;

    double min_entry() const;  // over all admissible matrices
    double max_entry() const;

private:
    SubshiftSpec spec_;
    int depth_;
    int dim_;
    std::vector<Matrix> table_;
    bool positive_ = true;
};

/// Product along an admissible word. For depth k > 1 the factors at the
/// last k-1 positions need extension symbols; the product with the
/// largest norm over all admissible extensions is returned.
WordProduct word_product(const MatrixFamily& family, const Word& word);

/// Exact norm of M_word for families with integral entries, computed in
/// 128-bit integers. Empty when entries are not integral or overflow.
std::optional<__int128> integer_norm(const MatrixFamily& family, const Word& word);

/// ||M_{IJ}|| / (||M_I|| ||M_J||) for depth-1 families.
double norm_split_ratio(const MatrixFamily& family, const Word& i, const Word& j);

struct H2Witness {
    int r = 0;
    double b = 0.0;
    bool satisfied = false;
};

/// Least r <= r_max for which every bridged sum is entrywise positive.
/// r_max = 0 selects the default m*d. Depth must be 1.
H2Witness check_h2(const MatrixFamily& family, int r_max = 0);

/// The bridged sum sum_{k<=r} sum_{K: iKj admissible} M_K.
Matrix bridged_sum(const MatrixFamily& family, Symbol i, Symbol j, int r);

/// eta_n: largest entrywise ratio of matrix values across a level-n
/// cylinder. Requires positive mode.
double distortion(const MatrixFamily& family, int n);

/// (b / sum_{k<=r} m^k)^q, the gluing factor: for admissible I, J some
/// bridge K with |K| <= r has ||M_{IKJ}||^q >= gamma_q ||M_I||^q ||M_J||^q.
double gluing_constant(const MatrixFamily& family, const H2Witness& witness, double q);

}  // namespace pressurelab
