#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pressurelab/gibbs.hpp"

namespace pressurelab {

using PressureFn = std::function<double(double)>;

inline constexpr double kDefaultDerivativeStep = 0.05;

/// (t P(q) - P(q t)) / log m.
double tau_formula(double q, double t, const PressureFn& pressure, int m);

/// log(sum_I nu([I])^t) / (-n log m) over nonzero weights.
double tau_empirical(const GibbsTable& table, double t);

/// Central difference with one Richardson step: (4 D(h/2) - D(h)) / 3.
double pressure_derivative(const PressureFn& pressure, double q, double h = kDefaultDerivativeStep);

struct OneSidedSlopes {
    double left;
    double right;
};
OneSidedSlopes one_sided_slopes(const PressureFn& pressure, double q, double h);

struct SpectrumPoint {
    double q = 0.0;
    double alpha = 0.0;
    double f_alpha = 0.0;  // NaN when flagged
    double tau_slope_check = 0.0;
    double left_slope = 0.0;
    double right_slope = 0.0;
    bool kink = false;
};

struct SpectrumOptions {
    double h = kDefaultDerivativeStep;
    double kink_threshold = 0.05;
    bool positive_mode = false;  // allows q < 0
};

/// alpha = P'(q), f = (-alpha q + P(q)) / log m per grid point. q = 0 is
/// dropped, and q < 0 too unless positive_mode.
std::vector<SpectrumPoint> dimension_spectrum(const PressureFn& pressure, const std::vector<double>& q_grid, int m,
                                              const SpectrumOptions& options = {});

/// min over the grid of (-alpha q + P(q)) / log m. Throws
/// ErrorKind::precondition when alpha lies outside the slope range of P on the grid.
double legendre_upper_bound(const PressureFn& pressure, double alpha, const std::vector<double>& q_grid, int m);

/// `q,alpha,f_alpha,flag`.
std::string spectrum_csv(const std::vector<SpectrumPoint>& points);

}  // namespace pressurelab
