#include "pressurelab/report.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "pressurelab/demos.hpp"
#include "pressurelab/error.hpp"
#include "pressurelab/gibbs.hpp"
#include "pressurelab/multifractal.hpp"
#include "pressurelab/pressure.hpp"

namespace pressurelab {

namespace {

void out(std::string& s, const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    s += buf;
}

std::string describe(const MatrixFamily& f) {
    std::string s;
    out(s, "system: m=%d, d=%d, depth=%d, %s\n", f.alphabet(), f.dim(), f.depth(),
        f.spec().is_full_shift() ? "full shift" : "subshift of finite type");
    return s;
}

}  // namespace

CheckReport run_check(const MatrixFamily& family, const Exec& exec) {
    CheckReport r;
    std::string& s = r.text;
    s += describe(family);
    const auto prim = is_primitive(family.spec());
    r.primitive = prim.primitive;
    if (prim.primitive)
        out(s, "primitive: yes (p=%d)\n", *prim.exponent);
    else
        out(s, "primitive: no\n");
    if (family.depth() == 1) {
        const auto w = check_h2(family);
        if (w.satisfied) {
            out(s, "H2: satisfied, r=%d, b=%.12g\n", w.r, w.b);
            out(s, "gluing factor b/sum_{k<=r} m^k: %.12g\n", gluing_constant(family, w, 1.0));
        } else {
            out(s, "H2: fails for r <= %d\n", family.alphabet() * family.dim());
            out(s, "warning: the bridged sums are not positive; Gibbs-measure guarantees do not apply\n");
        }
    } else {
        out(s, "H2: not applicable (depth %d)\n", family.depth());
    }
    out(s, "mode: %s\n", family.positive() ? "positive" : "non-negative");
    s += "zero products:";
    for (std::size_t n = 1; n <= 6; ++n) {
        if (count_words(family.spec(), n) > exec.word_budget) break;
        const auto t = build_table(family, n, exec);
        out(s, " n=%zu: %zu/%zu", n, t.zero_count, t.count);
    }
    s += '\n';
    return r;
}

std::string run_demo(const std::string& name, const Exec& exec) {
    const MatrixFamily family = demo_family(name);
    std::string s = "demo " + name + "\n";
    s += run_check(family, exec).text;
    const auto closed = demo_closed_form(name);

    if (name == "ex35") {
        PressureEvaluator eval(family, 20, exec);
        const auto p2 = eval.estimate(2.0);
        out(s, "P(2) estimate (n=20): %.9f   log 10 = %.9f   error %.2e\n", p2.estimate, std::log(10.0),
            p2.estimate - std::log(10.0));
        for (int q : {1, 2}) {
            const auto ex = pressure_exact_integer(family, q, exec);
            out(s, "P(%d) integer oracle: %.12f   closed form: %.12f\n", q, ex.estimate, (*closed)(q));
        }
        std::vector<PressureResult> curve;
        for (double q : make_grid(0.05, 3.0, 0.05)) curve.push_back(eval.estimate(q));
        out(s, "kinks in the n=20 curve (threshold 0.05): %zu\n", detect_kink(curve).size());
        for (auto& r : curve) {
            r.estimate = (*closed)(r.q);
            r.method = PressureMethod::closed_form_demo;
        }
        for (const auto& k : detect_kink(curve))
            out(s, "closed-form kink at q=%.2f: slopes %.6f -> %.6f (jump %.6f)\n", k.q, k.left_slope,
                k.right_slope, k.right_slope - k.left_slope);
    } else if (name == "ex36") {
        s += "  n  ||M1^n||  ||M1^2n||  ratio         (2n+2)/(n+2)^2\n";
        const Matrix m1 = family.symbol_matrix(0);
        for (int n = 1; n <= 12; ++n) {
            const Word wn{std::vector<Symbol>(n, 0)};
            const Word w2n{std::vector<Symbol>(2 * n, 0)};
            const auto a = static_cast<long long>(*integer_norm(family, wn));
            const auto b = static_cast<long long>(*integer_norm(family, w2n));
            out(s, "%3d  %8lld  %9lld  %-12.10f  %.10f\n", n, a, b, static_cast<double>(b) / (a * a),
                (2.0 * n + 2) / ((n + 2.0) * (n + 2.0)));
        }
        const auto qb = quasi_bernoulli_diagnostics(family, 3, 3, 10, 1.0, exec);
        out(s, "quasi-Bernoulli ratio nu(IJ)/(nu(I)nu(J)) at n=l=3, N=10, q=1: min %.6g, max %.6g\n",
            qb.upper.min_ratio, qb.upper.max_ratio);
    } else if (name == "golden") {
        PressureEvaluator eval(family, 12, exec);
        for (double q : {1.0, 2.0}) {
            const auto r = eval.estimate(q);
            out(s, "P(%.0f) n=12: estimate %.9f in [%.9f, %.9f]\n", q, r.estimate, r.lower.value_or(NAN),
                r.upper.value_or(NAN));
        }
        for (int q : {1, 2})
            out(s, "P(%d) integer oracle: %.12f\n", q, pressure_exact_integer(family, q, exec).estimate);
        const PressureFn fn = [&](double q) { return eval(q); };
        const double d1 = pressure_derivative(fn, 1.0);
        out(s, "P'(1) (h=0.05): %.6f\n", d1);
        const double p1 = eval(1.0);
        const auto g4 = gibbs_ratio_diagnostics(family, 4, 10, 1.0, p1, exec);
        const auto g6 = gibbs_ratio_diagnostics(family, 6, 10, 1.0, p1, exec);
        out(s, "Gibbs ratio spread (N=10, q=1): n=4 %.6f, n=6 %.6f\n", g4.spread(), g6.spread());
        const auto words = sample_words(family, 12, 1.0, 10000, 7, exec);
        const auto ly = empirical_lyapunov(family, words);
        out(s, "sampled Lyapunov mean (n=12, 10^4 words): %.6f +- %.6f\n", ly.mean,
            ly.stddev / std::sqrt(static_cast<double>(ly.count)));
        const auto spec = dimension_spectrum(fn, {0.5, 1.0, 2.0}, family.alphabet());
        for (const auto& p : spec) out(s, "spectrum q=%.2f: alpha %.6f, f %.6f\n", p.q, p.alpha, p.f_alpha);
    } else if (name == "scalar") {
        PressureEvaluator eval(family, 10, exec);
        for (double q : {-1.0, 0.5, 1.0, 2.0}) out(s, "P(%.1f) = %.12f\n", q, eval(q));
        out(s, "log 2    = %.12f\n", std::log(2.0));
    } else if (name == "goldenmean_sft") {
        const auto ex = pressure_exact_integer(family, 1, exec);
        out(s, "integer oracle P(1): %.12f   log golden ratio: %.12f\n", ex.estimate, (*closed)(1.0));
        out(s, "enumeration P(1) (n=20): %.9f\n", pressure_estimate(family, 20, 1.0, exec).estimate);
    }
    return s;
}

}  // namespace pressurelab
