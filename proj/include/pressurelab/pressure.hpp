#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pressurelab/enumeration.hpp"

namespace pressurelab {

struct PartitionSum {
    std::size_t n = 0;
    double q = 0.0;
    double log_value = 0.0;
    bool restricted = false;  // summed over nonzero products only (q < 0)
    std::size_t zero_count = 0;
};

enum class PressureMethod { enumeration, integer_oracle, closed_form_demo };
const char* to_string(PressureMethod m) noexcept;

struct PressureResult {
    double q = 0.0;
    double estimate = 0.0;
    std::optional<double> lower;
    std::optional<double> upper;
    std::size_t n_used = 0;  // word length; 0 for the integer oracle
    PressureMethod method = PressureMethod::enumeration;
    bool certified = true;   // false on the q < 0 restricted path
    std::optional<double> oracle_residual;  // integer oracle self-check at n = 8
    std::optional<double> discrepancy;      // oracle minus estimate (CLI cross-check)
};

PartitionSum partition_sum(const WordTable& table, double q);
PartitionSum partition_sum(const MatrixFamily& family, std::size_t n, double q, const Exec& exec = {});

/// (1/n) log s_n(q); an upper bound on P(q) for q > 0.
double pressure_upper(const WordTable& table, double q);
double pressure_upper(const MatrixFamily& family, std::size_t n, double q, const Exec& exec = {});

/// Certified lower bound by gluing copies of the heaviest level-n word;
/// empty when the gluing factor times its norm is below 1.
std::optional<double> pressure_lower(const MatrixFamily& family, const H2Witness& witness,
                                     const WordTable& table, double q);
std::optional<double> pressure_lower(const MatrixFamily& family, const H2Witness& witness, std::size_t n,
                                     double q, const Exec& exec = {});

/// Difference quotient (log s_n - log s_{n/2}) / (n - n/2).
double pressure_two_point(const MatrixFamily& family, std::size_t n, double q, const Exec& exec = {});

/// Caches the word tables needed to evaluate pressure estimates at many q.
class PressureEvaluator {
public:
    PressureEvaluator(const MatrixFamily& family, std::size_t n, const Exec& exec = {});

    PressureResult estimate(double q) const;
    double operator()(double q) const { return estimate(q).estimate; }

    const WordTable& table() const noexcept { return level_n_; }
    const std::optional<H2Witness>& witness() const noexcept { return witness_; }
    std::size_t n() const noexcept { return level_n_.length; }

private:
    MatrixFamily family_;  // own copy, so temporaries are safe
    WordTable level_n_;
    WordTable level_prev_;
    std::optional<H2Witness> witness_;
};

/// estimate = log s_n - log s_{n-1}, clamped into [lower, upper] when q > 0.
PressureResult pressure_estimate(const MatrixFamily& family, std::size_t n, double q, const Exec& exec = {});

/// log spectral radius of the tensor-power lift, for integer q >= 1 and depth 1.
PressureResult pressure_exact_integer(const MatrixFamily& family, int q, const Exec& exec = {});

/// log s_n(q) through the lift: u^t T^{n-1} w.
double lifted_log_partition_sum(const MatrixFamily& family, int q, std::size_t n);

inline constexpr std::size_t kLiftGuard = 4096;

std::vector<PressureResult> pressure_curve(const MatrixFamily& family, const std::vector<double>& q_grid,
                                           std::size_t n, const Exec& exec = {});

struct Kink {
    double q;
    double left_slope;
    double right_slope;
};

inline constexpr double kDefaultKinkThreshold = 0.05;

std::vector<Kink> detect_kink(const std::vector<PressureResult>& curve,
                              double jump_threshold = kDefaultKinkThreshold);

/// Uniform grid qmin, qmin+step, ... up to qmax (inclusive within step/1e6).
std::vector<double> make_grid(double qmin, double qmax, double step);

/// CSV header `q,n,estimate,lower,upper,method`, 12 significant digits.
std::string pressure_csv(const std::vector<PressureResult>& curve, bool with_discrepancy = false);

}  // namespace pressurelab
