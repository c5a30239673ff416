#include "pressurelab/matrix_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pressurelab/error.hpp"

namespace pressurelab {

double norm(const Matrix& b) { return b.sum(); }

double WordProduct::log_norm() const {
    return zero ? -std::numeric_limits<double>::infinity() : log_scale + std::log(normalized.sum());
}

Matrix WordProduct::value() const {
    if (zero) return Matrix::Zero(normalized.rows(), normalized.cols());
    return normalized * std::exp(log_scale);
}

namespace {

std::size_t ipow(std::size_t base, int e) {
    std::size_t out = 1;
    while (e-- > 0) out *= base;
    return out;
}

void append_factor(WordProduct& p, const Matrix& factor) {
    if (p.zero) return;
    Matrix next = p.normalized * factor;
    const double s = next.sum();
    if (!(s > 0.0)) {
        p.zero = true;
        p.normalized = Matrix::Zero(factor.rows(), factor.cols());
        return;
    }
    p.normalized = next / s;
    p.log_scale += std::log(s);
}

WordProduct start_product(const Matrix& factor) {
    WordProduct p;
    const double s = factor.sum();
    p.normalized = factor / s;
    p.log_scale = std::log(s);
    return p;
}

}  // namespace

MatrixFamily::MatrixFamily(SubshiftSpec spec, int depth, int dim, std::vector<Matrix> matrices)
    : spec_(std::move(spec)), depth_(depth), dim_(dim), table_(std::move(matrices)) {
    if (depth_ < 1) fail(ErrorKind::input, "depth must be at least 1");
    if (dim_ < 1 || dim_ > kMaxDim)
        fail(ErrorKind::input, "matrix dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    const std::size_t expected = ipow(static_cast<std::size_t>(spec_.alphabet()), depth_);
    if (table_.size() != expected)
        fail(ErrorKind::input, "expected " + std::to_string(expected) + " matrix slots, got " +
                                   std::to_string(table_.size()));
    std::vector<char> used(expected, 0);
    for (const auto& w : enumerate_words(spec_, static_cast<std::size_t>(depth_))) {
        const auto c = code(w.symbols.data());
        used[c] = 1;
        const auto& mtx = table_[c];
        const auto name = format_word(w, spec_.alphabet());
        if (mtx.rows() != dim_ || mtx.cols() != dim_)
            fail(ErrorKind::input, "matrix for word " + name + " must be " + std::to_string(dim_) + "x" +
                                       std::to_string(dim_));
        bool nonzero = false;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                const double v = mtx(i, j);
                if (!std::isfinite(v) || v < 0.0)
                    fail(ErrorKind::input, "matrix for word " + name + " has invalid entry at (" +
                                               std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
                nonzero = nonzero || v > 0.0;
                positive_ = positive_ && v > 0.0;
            }
        if (!nonzero) fail(ErrorKind::input, "matrix for word " + name + " is entirely zero");
    }
    for (std::size_t c = 0; c < expected; ++c)
        if (!used[c]) table_[c] = Matrix::Zero(dim_, dim_);
}

namespace {
int leading_dim(const std::vector<Matrix>& v) { return v.empty() ? 0 : static_cast<int>(v.front().rows()); }
}  // namespace

// per_symbol is taken by const reference: reading its size and moving it
// in one argument list would be unsequenced.
MatrixFamily::MatrixFamily(SubshiftSpec spec, const std::vector<Matrix>& per_symbol)
    : MatrixFamily(std::move(spec), 1, leading_dim(per_symbol), per_symbol) {}

std::size_t MatrixFamily::code(const Symbol* symbols) const {
    std::size_t c = 0;
    for (int i = 0; i < depth_; ++i) c = c * static_cast<std::size_t>(spec_.alphabet()) + symbols[i];
    return c;
}

const Matrix& MatrixFamily::symbol_matrix(Symbol s) const {
    if (depth_ != 1) fail(ErrorKind::unsupported, "per-symbol matrices exist only for depth 1");
    return table_.at(s);
}

MatrixFamily MatrixFamily::scaled(double c) const {
    if (!(c > 0.0)) fail(ErrorKind::input, "scale factor must be positive");
    auto t = table_;
    for (auto& mtx : t) mtx *= c;
    return MatrixFamily(spec_, depth_, dim_, std::move(t));
}

MatrixFamily MatrixFamily::permuted(const std::vector<Symbol>& perm) const {
    const int m = spec_.alphabet();
    if (perm.size() != static_cast<std::size_t>(m)) fail(ErrorKind::input, "permutation size mismatch");
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) adj[perm[i] * m + perm[j]] = spec_.adjacency()[i * m + j];
    SubshiftSpec next(m, std::move(adj));
    std::vector<Matrix> t(table_.size());
    std::vector<Symbol> w(depth_);
    for (std::size_t c = 0; c < table_.size(); ++c) {
        std::size_t rest = c;
        for (int i = depth_; i-- > 0;) {
            w[i] = static_cast<Symbol>(rest % m);
            rest /= m;
        }
        std::size_t nc = 0;
        for (int i = 0; i < depth_; ++i) nc = nc * m + perm[w[i]];
        t[nc] = table_[c];
    }
    return MatrixFamily(std::move(next), depth_, dim_, std::move(t));
}

double MatrixFamily::min_entry() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& w : enumerate_words(spec_, static_cast<std::size_t>(depth_)))
        v = std::min(v, at(w.symbols.data()).minCoeff());
    return v;
}

double MatrixFamily::max_entry() const {
    double v = 0.0;
    for (const auto& mtx : table_) v = std::max(v, mtx.maxCoeff());
    return v;
}

WordProduct word_product(const MatrixFamily& family, const Word& word) {
    if (word.empty()) fail(ErrorKind::input, "word must be nonempty");
    if (!is_admissible(family.spec(), word)) fail(ErrorKind::input, "word is not admissible");
    const int k = family.depth();
    if (k == 1) {
        WordProduct p = start_product(family.at(&word.symbols[0]));
        for (std::size_t t = 1; t < word.size(); ++t) append_factor(p, family.at(&word.symbols[t]));
        return p;
    }
    // maximize over admissible extensions of length k-1
    const std::size_t n = word.size();
    std::vector<Symbol> buf(word.symbols);
    buf.resize(n + k - 1);
    WordProduct best;
    best.zero = true;
    best.normalized = Matrix::Zero(family.dim(), family.dim());
    double best_log = -std::numeric_limits<double>::infinity();
    auto evaluate = [&] {
        WordProduct p = start_product(family.at(&buf[0]));
        for (std::size_t t = 1; t < n; ++t) append_factor(p, family.at(&buf[t]));
        const double ln = p.log_norm();
        if (ln > best_log) {
            best_log = ln;
            best = p;
        }
    };
    auto extend = [&](auto&& self, std::size_t pos) -> void {
        if (pos == buf.size()) {
            evaluate();
            return;
        }
        for (auto s : family.spec().successors(buf[pos - 1])) {
            buf[pos] = s;
            self(self, pos + 1);
        }
    };
    extend(extend, n);
    return best;
}

std::optional<__int128> integer_norm(const MatrixFamily& family, const Word& word) {
    if (family.depth() != 1 || word.empty()) return std::nullopt;
    const int d = family.dim();
    using Big = __int128;
    constexpr Big kLimit = Big{1} << 100;
    auto to_int = [&](const Matrix& mtx, std::vector<Big>& out) {
        out.resize(static_cast<std::size_t>(d) * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const double v = mtx(i, j);
                if (v != std::floor(v) || v > 1e15) return false;
                out[i * d + j] = static_cast<Big>(v);
            }
        return true;
    };
    std::vector<Big> acc, factor, next(static_cast<std::size_t>(d) * d);
    if (!to_int(family.at(&word.symbols[0]), acc)) return std::nullopt;
    for (std::size_t t = 1; t < word.size(); ++t) {
        if (!to_int(family.at(&word.symbols[t]), factor)) return std::nullopt;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Big s = 0;
                for (int l = 0; l < d; ++l) s += acc[i * d + l] * factor[l * d + j];
                if (s > kLimit) return std::nullopt;
                next[i * d + j] = s;
            }
        acc.swap(next);
    }
    Big total = 0;
    for (auto v : acc) total += v;
    return total;
}

double norm_split_ratio(const MatrixFamily& family, const Word& i, const Word& j) {
    const auto ij = word_product(family, concat(i, j));
    const auto pi = word_product(family, i);
    const auto pj = word_product(family, j);
    if (pi.zero || pj.zero) fail(ErrorKind::degenerate, "factor product vanishes");
    return std::exp(ij.log_norm() - pi.log_norm() - pj.log_norm());
}

namespace {

// sums[(i*m + j)] = sum_{k<=r} sum_{K: iKj admissible} M_K, for r = 1.. as the callback requests.
template <class Visit>
void bridged_sums(const MatrixFamily& family, int r_max, Visit&& visit) {
    if (family.depth() != 1) fail(ErrorKind::unsupported, "H2 is defined for depth-1 families");
    const auto& spec = family.spec();
    const int m = spec.alphabet();
    const int d = family.dim();
    const auto zero = Matrix::Zero(d, d);
    // words[s*m + t]: sum of M_K over admissible K of the current length from s to t
    std::vector<Matrix> words(static_cast<std::size_t>(m) * m, zero), next = words;
    std::vector<Matrix> sums(static_cast<std::size_t>(m) * m, zero);
    for (int s = 0; s < m; ++s) words[s * m + s] = family.symbol_matrix(static_cast<Symbol>(s));
    for (int r = 1; r <= r_max; ++r) {
        if (r > 1) {
            for (auto& x : next) x = zero;
            for (int s = 0; s < m; ++s)
                for (int t = 0; t < m; ++t)
                    for (auto u : spec.successors(static_cast<Symbol>(t)))
                        next[s * m + u] += words[s * m + t] * family.symbol_matrix(u);
            words.swap(next);
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (auto s : spec.successors(static_cast<Symbol>(i)))
                    for (int t = 0; t < m; ++t)
                        if (spec.allowed(static_cast<Symbol>(t), static_cast<Symbol>(j)))
                            sums[i * m + j] += words[s * m + t];
        if (visit(r, sums)) return;
    }
}

}  // namespace

H2Witness check_h2(const MatrixFamily& family, int r_max) {
    if (r_max <= 0) r_max = family.alphabet() * family.dim();
    H2Witness w;
    bridged_sums(family, r_max, [&](int r, const std::vector<Matrix>& sums) {
        double b = std::numeric_limits<double>::infinity();
        for (const auto& s : sums) b = std::min(b, s.minCoeff());
        if (b > 0.0) {
            w = {r, b, true};
            return true;
        }
        return false;
    });
    return w;
}

Matrix bridged_sum(const MatrixFamily& family, Symbol i, Symbol j, int r) {
    if (r < 1) fail(ErrorKind::input, "bridge horizon must be at least 1");
    const int m = family.alphabet();
    if (i >= m || j >= m) fail(ErrorKind::input, "symbol out of range");
    Matrix out;
    bridged_sums(family, r, [&](int k, const std::vector<Matrix>& sums) {
        if (k == r) out = sums[i * m + j];
        return k == r;
    });
    return out;
}

double distortion(const MatrixFamily& family, int n) {
    if (!family.positive()) fail(ErrorKind::unsupported, "distortion requires strictly positive matrices");
    if (n < 1) fail(ErrorKind::input, "cylinder length must be at least 1");
    const int k = family.depth();
    if (n >= k) return 1.0;
    const int d = family.dim();
    double eta = 1.0;
    for (const auto& cyl : enumerate_words(family.spec(), static_cast<std::size_t>(n))) {
        Matrix lo = Matrix::Constant(d, d, std::numeric_limits<double>::infinity());
        Matrix hi = Matrix::Zero(d, d);
        for (const auto& w : enumerate_words(family.spec(), static_cast<std::size_t>(k))) {
            if (!std::equal(cyl.symbols.begin(), cyl.symbols.end(), w.symbols.begin())) continue;
            const auto& mtx = family.at(w.symbols.data());
            lo = lo.cwiseMin(mtx);
            hi = hi.cwiseMax(mtx);
        }
        eta = std::max(eta, hi.cwiseQuotient(lo).maxCoeff());
    }
    return eta;
}

double gluing_constant(const MatrixFamily& family, const H2Witness& witness, double q) {
    if (!witness.satisfied) fail(ErrorKind::precondition, "H2 witness is not satisfied");
    if (q < 0.0) fail(ErrorKind::precondition, "gluing constant requires q >= 0");
    double words = 0.0, mk = 1.0;
    for (int k = 1; k <= witness.r; ++k) {
        mk *= family.alphabet();
        words += mk;
    }
    return std::pow(witness.b / words, q);
}

}  // namespace pressurelab
