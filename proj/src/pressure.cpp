#include "pressurelab/pressure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pressurelab/error.hpp"

namespace pressurelab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive_q(double q, const char* what) {
    if (!(q > 0.0)) fail(ErrorKind::precondition, std::string(what) + " requires q > 0");
}

}  // namespace

const char* to_string(PressureMethod m) noexcept {
    switch (m) {
        case PressureMethod::enumeration: return "enumeration";
        case PressureMethod::integer_oracle: return "integer_oracle";
        case PressureMethod::closed_form_demo: return "closed_form_demo";
    }
    return "unknown";
}

PartitionSum partition_sum(const WordTable& table, double q) {
    std::vector<double> terms;
    terms.reserve(table.count - table.zero_count);
    for (std::size_t i = 0; i < table.count; ++i)
        if (!table.zero[i]) terms.push_back(table.log_term(i, q));
    if (terms.empty())
        fail(ErrorKind::degenerate, "every product of length " + std::to_string(table.length) + " vanishes");
    PartitionSum s;
    s.n = table.length;
    s.q = q;
    s.log_value = log_sum_exp(terms);
    s.restricted = q < 0.0;
    s.zero_count = table.zero_count;
    return s;
}

PartitionSum partition_sum(const MatrixFamily& family, std::size_t n, double q, const Exec& exec) {
    return partition_sum(build_table(family, n, exec), q);
}

double pressure_upper(const WordTable& table, double q) {
    require_positive_q(q, "pressure upper bound");
    return partition_sum(table, q).log_value / static_cast<double>(table.length);
}

double pressure_upper(const MatrixFamily& family, std::size_t n, double q, const Exec& exec) {
    require_positive_q(q, "pressure upper bound");
    return pressure_upper(build_table(family, n, exec), q);
}

std::optional<double> pressure_lower(const MatrixFamily& family, const H2Witness& witness, const WordTable& table,
                                     double q) {
    if (!witness.satisfied) fail(ErrorKind::precondition, "pressure lower bound needs a satisfied H2 witness");
    require_positive_q(q, "pressure lower bound");
    const double log_gamma = std::log(gluing_constant(family, witness, 1.0));
    double heaviest = kNegInf;
    for (std::size_t i = 0; i < table.count; ++i) heaviest = std::max(heaviest, table.log_sup[i]);
    const double x = log_gamma + heaviest;
    if (!(x >= 0.0)) return std::nullopt;
    return q * x / static_cast<double>(table.length + witness.r);
}

std::optional<double> pressure_lower(const MatrixFamily& family, const H2Witness& witness, std::size_t n, double q,
                                     const Exec& exec) {
    if (!witness.satisfied) fail(ErrorKind::precondition, "pressure lower bound needs a satisfied H2 witness");
    require_positive_q(q, "pressure lower bound");
    return pressure_lower(family, witness, build_table(family, n, exec), q);
}

double pressure_two_point(const MatrixFamily& family, std::size_t n, double q, const Exec& exec) {
    if (n < 2) fail(ErrorKind::input, "two-point estimate needs n >= 2");
    const std::size_t half = n / 2;
    const double a = partition_sum(family, n, q, exec).log_value;
    const double b = partition_sum(family, half, q, exec).log_value;
    return (a - b) / static_cast<double>(n - half);
}

PressureEvaluator::PressureEvaluator(const MatrixFamily& family, std::size_t n, const Exec& exec)
    : family_(family) {
    if (n < 4) fail(ErrorKind::input, "pressure estimates need n >= 4");
    level_n_ = build_table(family, n, exec);
    level_prev_ = build_table(family, n - 1, exec);
    if (family.depth() == 1) witness_ = check_h2(family);
}

PressureResult PressureEvaluator::estimate(double q) const {
    PressureResult r;
    r.q = q;
    r.n_used = level_n_.length;
    r.method = PressureMethod::enumeration;
    const double ln = partition_sum(level_n_, q).log_value;
    const double lp = partition_sum(level_prev_, q).log_value;
    r.estimate = ln - lp;
    r.certified = q >= 0.0;
    if (q > 0.0) {
        r.upper = ln / static_cast<double>(level_n_.length);
        if (witness_ && witness_->satisfied) r.lower = pressure_lower(family_, *witness_, level_n_, q);
        if (r.upper) r.estimate = std::min(r.estimate, *r.upper);
        if (r.lower) r.estimate = std::max(r.estimate, *r.lower);
    }
    return r;
}

PressureResult pressure_estimate(const MatrixFamily& family, std::size_t n, double q, const Exec& exec) {
    return PressureEvaluator(family, n, exec).estimate(q);
}

namespace {

// Tensor-power lift: state (symbol j, multi-index b in [0, d^q)).
class Lift {
public:
    Lift(const MatrixFamily& family, int q) : family_(family), q_(q), d_(family.dim()), m_(family.alphabet()) {
        block_ = 1;
        for (int i = 0; i < q; ++i) block_ *= static_cast<std::size_t>(d_);
        scratch_.resize(block_);
        buffer_.resize(dim());
    }

    std::size_t dim() const { return block_ * static_cast<std::size_t>(m_); }

    // out = M^{(x)q} in, applied one tensor mode at a time
    void kron_apply(const Matrix& mtx, const double* in, double* out) const {
        std::copy(in, in + block_, out);
        std::size_t stride = block_;
        for (int mode = 0; mode < q_; ++mode) {
            stride /= static_cast<std::size_t>(d_);
            const std::size_t outer = block_ / (stride * d_);
            for (std::size_t o = 0; o < outer; ++o)
                for (std::size_t inner = 0; inner < stride; ++inner) {
                    const std::size_t base = o * stride * d_ + inner;
                    for (int a = 0; a < d_; ++a) {
                        double s = 0.0;
                        for (int b = 0; b < d_; ++b) s += mtx(a, b) * out[base + b * stride];
                        scratch_[a] = s;
                    }
                    for (int a = 0; a < d_; ++a) out[base + a * stride] = scratch_[a];
                }
        }
    }

    // y = T x, T[(i,a),(j,b)] = A[i][j] (M_j^{(x)q})[a,b]
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        for (int j = 0; j < m_; ++j)
            kron_apply(family_.symbol_matrix(static_cast<Symbol>(j)), x.data() + j * block_,
                       buffer_.data() + j * block_);
        y.assign(dim(), 0.0);
        for (int i = 0; i < m_; ++i)
            for (auto j : family_.spec().successors(static_cast<Symbol>(i)))
                for (std::size_t b = 0; b < block_; ++b) y[i * block_ + b] += buffer_[j * block_ + b];
    }

    // u_i = (1^t M_i)^{(x)q}
    std::vector<double> left_vector() const {
        std::vector<double> u(dim());
        std::vector<double> ones(block_, 1.0);
        for (int i = 0; i < m_; ++i) {
            Matrix t = family_.symbol_matrix(static_cast<Symbol>(i)).transpose();
            kron_apply(t, ones.data(), u.data() + i * block_);
        }
        return u;
    }

private:
    const MatrixFamily& family_;
    int q_, d_, m_;
    std::size_t block_;
    mutable std::vector<double> scratch_;
    mutable std::vector<double> buffer_;
};

void check_lift(const MatrixFamily& family, int q) {
    if (family.depth() != 1) fail(ErrorKind::unsupported, "the integer-q lift needs a depth-1 family");
    if (q < 1) fail(ErrorKind::precondition, "the integer-q lift needs q >= 1");
    double size = family.alphabet();
    for (int i = 0; i < q; ++i) size *= family.dim();
    if (size > static_cast<double>(kLiftGuard))
        fail(ErrorKind::size, "lift dimension m*d^q = " + std::to_string(static_cast<long long>(size)) +
                                  " exceeds " + std::to_string(kLiftGuard));
}

double l1(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

}  // namespace

double lifted_log_partition_sum(const MatrixFamily& family, int q, std::size_t n) {
    check_lift(family, q);
    if (n == 0) fail(ErrorKind::input, "word length must be at least 1");
    Lift lift(family, q);
    std::vector<double> v(lift.dim(), 1.0), next;
    double log_scale = 0.0;
    for (std::size_t step = 1; step < n; ++step) {
        lift.apply(v, next);
        const double s = l1(next);
        if (!(s > 0.0)) return kNegInf;
        for (auto& x : next) x /= s;
        log_scale += std::log(s);
        v.swap(next);
    }
    const auto u = lift.left_vector();
    std::vector<double> prod(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) prod[i] = u[i] * v[i];
    const double s = l1(prod);
    if (!(s > 0.0)) return kNegInf;
    return log_scale + std::log(s);
}

PressureResult pressure_exact_integer(const MatrixFamily& family, int q, const Exec& exec) {
    check_lift(family, q);
    Lift lift(family, q);
    const std::size_t dim = lift.dim();
    std::vector<double> x(dim, 1.0 / static_cast<double>(dim)), y;

    constexpr int kMaxIterations = 100000;
    constexpr double kTolerance = 1e-12;
    double prev_ratio = 0.0, prev_avg = 0.0, rho = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
        lift.apply(x, y);
        const double ratio = l1(y);
        if (!(ratio > 0.0)) fail(ErrorKind::degenerate, "lifted transfer matrix is nilpotent");
        // geometric mean of two consecutive ratios damps period-2 oscillation
        const double avg = it == 0 ? ratio : std::sqrt(ratio * prev_ratio);
        if (it >= 2 && std::abs(avg - prev_avg) <= kTolerance * avg) {
            rho = avg;
            converged = true;
            break;
        }
        prev_ratio = ratio;
        prev_avg = avg;
        for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / ratio;
    }
    if (!converged) {
        if (dim > 512)
            fail(ErrorKind::convergence, "power iteration did not converge in " + std::to_string(kMaxIterations) +
                                             " iterations");
        Eigen::MatrixXd dense(dim, dim);
        std::vector<double> e(dim, 0.0);
        for (std::size_t c = 0; c < dim; ++c) {
            e[c] = 1.0;
            lift.apply(e, y);
            e[c] = 0.0;
            for (std::size_t r = 0; r < dim; ++r) dense(r, c) = y[r];
        }
        rho = Eigen::EigenSolver<Eigen::MatrixXd>(dense, false).eigenvalues().cwiseAbs().maxCoeff();
    }

    PressureResult r;
    r.q = q;
    r.estimate = std::log(rho);
    r.method = PressureMethod::integer_oracle;
    r.n_used = 0;

    constexpr std::size_t kCheckLevel = 8;
    if (count_words(family.spec(), kCheckLevel) <= exec.word_budget) {
        const double lifted = lifted_log_partition_sum(family, q, kCheckLevel);
        const double direct = partition_sum(family, kCheckLevel, q, exec).log_value;
        const double residual = std::abs(std::expm1(lifted - direct));
        r.oracle_residual = residual;
        if (residual > 1e-9)
            fail(ErrorKind::internal, "integer-q oracle disagrees with enumeration at n = 8 (relative " +
                                          std::to_string(residual) + ")");
    }
    return r;
}

std::vector<PressureResult> pressure_curve(const MatrixFamily& family, const std::vector<double>& q_grid,
                                           std::size_t n, const Exec& exec) {
    for (std::size_t i = 1; i < q_grid.size(); ++i)
        if (!(q_grid[i] > q_grid[i - 1])) fail(ErrorKind::input, "q grid must be strictly increasing");
    PressureEvaluator eval(family, n, exec);
    std::vector<PressureResult> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) out.push_back(eval.estimate(q));
    return out;
}

std::vector<Kink> detect_kink(const std::vector<PressureResult>& curve, double jump_threshold) {
    if (curve.size() < 5) fail(ErrorKind::input, "kink detection needs at least 5 grid points");
    const double step = curve[1].q - curve[0].q;
    if (!(step > 0.0)) fail(ErrorKind::input, "grid must be increasing");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (std::abs((curve[i].q - curve[i - 1].q) - step) > 1e-9 * std::max(1.0, std::abs(step)) + 1e-12)
            fail(ErrorKind::input, "kink detection needs a uniform grid");
    std::vector<Kink> kinks;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double left = (curve[i].estimate - curve[i - 1].estimate) / (curve[i].q - curve[i - 1].q);
        const double right = (curve[i + 1].estimate - curve[i].estimate) / (curve[i + 1].q - curve[i].q);
        if (std::abs(right - left) > jump_threshold) kinks.push_back({curve[i].q, left, right});
    }
    return kinks;
}

std::vector<double> make_grid(double qmin, double qmax, double step) {
    if (!(step > 0.0)) fail(ErrorKind::input, "q step must be positive");
    if (!(qmax >= qmin)) fail(ErrorKind::input, "qmax must be at least qmin");
    const auto count = static_cast<std::size_t>(std::floor((qmax - qmin) / step + 1e-6)) + 1;
    if (count > 1000000) fail(ErrorKind::size, "q grid too large");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = std::nearbyint((qmin + static_cast<double>(i) * step) * 1e12) / 1e12;
    return grid;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

}  // namespace

std::string pressure_csv(const std::vector<PressureResult>& curve, bool with_discrepancy) {
    std::string out = "q,n,estimate,lower,upper,method";
    if (with_discrepancy) out += ",discrepancy";
    out += '\n';
    for (const auto& r : curve) {
        out += fmt(r.q) + ',' + std::to_string(r.n_used) + ',' + fmt(r.estimate) + ',' + fmt(r.lower) + ',' +
               fmt(r.upper) + ',' + to_string(r.method);
        if (with_discrepancy) out += ',' + fmt(r.discrepancy);
        out += '\n';
    }
    return out;
}

}  // namespace pressurelab
