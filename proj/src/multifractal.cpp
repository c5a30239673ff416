#include "pressurelab/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pressurelab/error.hpp"

namespace pressurelab {

namespace {

double log_alphabet(int m) {
    if (m < 2) fail(ErrorKind::input, "alphabet size must be at least 2");
    return std::log(static_cast<double>(m));
}

std::string fmt(double v) {
    if (std::isnan(v)) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

double tau_formula(double q, double t, const PressureFn& pressure, int m) {
    return (t * pressure(q) - pressure(q * t)) / log_alphabet(m);
}

double tau_empirical(const GibbsTable& table, double t) {
    if (table.n == 0) fail(ErrorKind::input, "empty table");
    std::vector<double> terms;
    terms.reserve(table.size());
    for (double w : table.weights)
        if (w > 0.0) terms.push_back(t * std::log(w));
    if (terms.empty()) fail(ErrorKind::degenerate, "table has no positive weight");
    return log_sum_exp(terms) / (-static_cast<double>(table.n) * log_alphabet(table.alphabet));
}

double pressure_derivative(const PressureFn& pressure, double q, double h) {
    if (!(h > 0.0)) fail(ErrorKind::input, "derivative step must be positive");
    auto central = [&](double step) { return (pressure(q + step) - pressure(q - step)) / (2.0 * step); };
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

OneSidedSlopes one_sided_slopes(const PressureFn& pressure, double q, double h) {
    if (!(h > 0.0)) fail(ErrorKind::input, "derivative step must be positive");
    const double p = pressure(q);
    return {(p - pressure(q - h)) / h, (pressure(q + h) - p) / h};
}

std::vector<SpectrumPoint> dimension_spectrum(const PressureFn& pressure, const std::vector<double>& q_grid, int m,
                                              const SpectrumOptions& options) {
    const double lm = log_alphabet(m);
    std::vector<SpectrumPoint> out;
    for (double q : q_grid) {
        if (std::abs(q) < 1e-12) continue;
        if (q < 0.0 && !options.positive_mode) continue;
        SpectrumPoint pt;
        pt.q = q;
        const double p = pressure(q);
        pt.alpha = pressure_derivative(pressure, q, options.h);
        const auto slopes = one_sided_slopes(pressure, q, options.h);
        pt.left_slope = slopes.left;
        pt.right_slope = slopes.right;
        pt.kink = std::abs(slopes.right - slopes.left) > options.kink_threshold;
        pt.f_alpha = pt.kink ? std::numeric_limits<double>::quiet_NaN() : (-pt.alpha * q + p) / lm;
        // slope of tau in t at t = 1, with the t-step mapped onto a q-step of h
        const double dt = options.h / std::abs(q);
        const double tau_slope =
            (tau_formula(q, 1.0 + dt, pressure, m) - tau_formula(q, 1.0 - dt, pressure, m)) / (2.0 * dt);
        pt.tau_slope_check = pt.alpha - (p - lm * tau_slope) / q;
        out.push_back(pt);
    }
    return out;
}

double legendre_upper_bound(const PressureFn& pressure, double alpha, const std::vector<double>& q_grid, int m) {
    if (q_grid.empty()) fail(ErrorKind::input, "q grid is empty");
    const double lm = log_alphabet(m);
    std::vector<double> values(q_grid.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i) values[i] = pressure(q_grid[i]);
    if (q_grid.size() >= 2) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 1; i < q_grid.size(); ++i) {
            const double s = (values[i] - values[i - 1]) / (q_grid[i] - q_grid[i - 1]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        const double slack = 1e-6 * std::max(1.0, std::abs(alpha));
        if (alpha < lo - slack || alpha > hi + slack)
            fail(ErrorKind::precondition, "alpha = " + fmt(alpha) + " lies outside the slope range [" + fmt(lo) +
                                              ", " + fmt(hi) + "] of P on the grid");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q_grid.size(); ++i) best = std::min(best, (-alpha * q_grid[i] + values[i]) / lm);
    return best;
}

std::string spectrum_csv(const std::vector<SpectrumPoint>& points) {
    std::string out = "q,alpha,f_alpha,flag\n";
    for (const auto& p : points)
        out += fmt(p.q) + ',' + fmt(p.alpha) + ',' + fmt(p.f_alpha) + ',' + (p.kink ? "kink" : "") + '\n';
    return out;
}

}  // namespace pressurelab
