#include "pressurelab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>

#include "pressurelab/config.hpp"
#include "pressurelab/demos.hpp"
#include "pressurelab/error.hpp"
#include "pressurelab/gibbs.hpp"
#include "pressurelab/multifractal.hpp"
#include "pressurelab/plot.hpp"
#include "pressurelab/pressure.hpp"
#include "pressurelab/report.hpp"

using namespace pressurelab;

struct plab_system {
    MatrixFamily family;
    std::string demo;  // empty unless built from a demo
};

namespace {

thread_local std::string last_error;

plab_status status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::input: return PLAB_E_INPUT;
        case ErrorKind::parse: return PLAB_E_PARSE;
        case ErrorKind::precondition: return PLAB_E_PRECONDITION;
        case ErrorKind::degenerate: return PLAB_E_DEGENERATE;
        case ErrorKind::size: return PLAB_E_SIZE;
        case ErrorKind::unsupported: return PLAB_E_UNSUPPORTED;
        case ErrorKind::convergence: return PLAB_E_CONVERGENCE;
        case ErrorKind::io: return PLAB_E_IO;
        case ErrorKind::internal: return PLAB_E_INTERNAL;
    }
    return PLAB_E_INTERNAL;
}

template <class F>
plab_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return PLAB_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return PLAB_E_SIZE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return PLAB_E_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void require(const void* p, const char* what) {
    if (!p) fail(ErrorKind::input, std::string("null argument: ") + what);
}

Exec exec_of(const plab_options* opts) {
    Exec e;
    unsigned threads = opts ? opts->threads : 0;
    if (threads == 0) {
        if (const char* env = std::getenv("PRESSURELAB_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v > 0 && v <= 1024) threads = static_cast<unsigned>(v);
        }
    }
    e.threads = threads == 0 ? 1 : threads;
    if (opts && opts->word_budget) e.word_budget = opts->word_budget;
    return e;
}

void fill(const PressureResult& r, plab_pressure* out) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out->q = r.q;
    out->estimate = r.estimate;
    out->lower = r.lower.value_or(nan);
    out->upper = r.upper.value_or(nan);
    out->n_used = r.n_used;
    out->method = static_cast<int>(r.method);
    out->certified = r.certified ? 1 : 0;
}

bool is_integer(double q) { return q >= 1.0 && std::fabs(q - std::round(q)) < 1e-12; }

bool lift_fits(const MatrixFamily& f, int q) {
    if (f.depth() != 1) return false;
    double size = f.alphabet();
    for (int k = 0; k < q; ++k) size *= f.dim();
    return size <= static_cast<double>(kLiftGuard);
}

}  // namespace

extern "C" {

const char* plab_version(void) { return "0.1.0"; }

const char* plab_last_error(void) { return last_error.c_str(); }

const char* plab_status_name(plab_status status) {
    switch (status) {
        case PLAB_OK: return "ok";
        case PLAB_E_INPUT: return "input";
        case PLAB_E_PARSE: return "parse";
        case PLAB_E_PRECONDITION: return "precondition";
        case PLAB_E_DEGENERATE: return "degenerate";
        case PLAB_E_SIZE: return "size";
        case PLAB_E_UNSUPPORTED: return "unsupported";
        case PLAB_E_CONVERGENCE: return "convergence";
        case PLAB_E_IO: return "io";
        case PLAB_E_INTERNAL: return "internal";
    }
    return "unknown";
}

void plab_string_free(char* s) { std::free(s); }

plab_status plab_system_load(const char* path, plab_system** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new plab_system{to_family(parse_config(path)), {}};
    });
}

plab_status plab_system_parse(const char* json_text, plab_system** out) {
    return guarded([&] {
        require(json_text, "json_text");
        require(out, "out");
        *out = new plab_system{to_family(parse_config_text(json_text)), {}};
    });
}

plab_status plab_system_demo(const char* name, plab_system** out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        *out = new plab_system{demo_family(name), name};
    });
}

void plab_system_free(plab_system* sys) { delete sys; }

int plab_system_alphabet(const plab_system* sys) { return sys ? sys->family.alphabet() : 0; }
int plab_system_dim(const plab_system* sys) { return sys ? sys->family.dim() : 0; }
int plab_system_depth(const plab_system* sys) { return sys ? sys->family.depth() : 0; }

plab_status plab_system_to_json(const plab_system* sys, char** out) {
    return guarded([&] {
        require(sys, "sys");
        require(out, "out");
        *out = dup(emit_config(from_family(sys->family)));
    });
}

const char* plab_demo_names(void) {
    static const std::string names = [] {
        std::string s;
        for (const auto& n : demo_names()) s += (s.empty() ? "" : ",") + n;
        return s;
    }();
    return names.c_str();
}

plab_status plab_primitivity(const plab_system* sys, int* primitive, int* exponent) {
    return guarded([&] {
        require(sys, "sys");
        require(primitive, "primitive");
        const auto p = is_primitive(sys->family.spec());
        *primitive = p.primitive ? 1 : 0;
        if (exponent) *exponent = p.exponent.value_or(0);
    });
}

plab_status plab_check_h2(const plab_system* sys, int r_max, plab_h2* out) {
    return guarded([&] {
        require(sys, "sys");
        require(out, "out");
        const auto w = check_h2(sys->family, r_max);
        out->satisfied = w.satisfied ? 1 : 0;
        out->r = w.r;
        out->b = w.b;
    });
}

plab_status plab_check_report(const plab_system* sys, const plab_options* opts, char** report, int* primitive) {
    return guarded([&] {
        require(sys, "sys");
        require(report, "report");
        const auto r = run_check(sys->family, exec_of(opts));
        *report = dup(r.text);
        if (primitive) *primitive = r.primitive ? 1 : 0;
    });
}

plab_status plab_partition_sum_log(const plab_system* sys, size_t n, double q, const plab_options* opts,
                                   double* log_value) {
    return guarded([&] {
        require(sys, "sys");
        require(log_value, "log_value");
        *log_value = partition_sum(sys->family, n, q, exec_of(opts)).log_value;
    });
}

plab_status plab_pressure_estimate(const plab_system* sys, size_t n, double q, const plab_options* opts,
                                   plab_pressure* out) {
    return guarded([&] {
        require(sys, "sys");
        require(out, "out");
        fill(pressure_estimate(sys->family, n, q, exec_of(opts)), out);
    });
}

plab_status plab_pressure_exact(const plab_system* sys, int q, plab_pressure* out) {
    return guarded([&] {
        require(sys, "sys");
        require(out, "out");
        fill(pressure_exact_integer(sys->family, q), out);
    });
}

plab_status plab_pressure_csv(const plab_system* sys, double qmin, double qmax, double qstep, size_t n,
                              const plab_options* opts, char** csv) {
    return guarded([&] {
        require(sys, "sys");
        require(csv, "csv");
        const Exec exec = exec_of(opts);
        auto curve = pressure_curve(sys->family, make_grid(qmin, qmax, qstep), n, exec);
        for (auto& r : curve) {
            if (!is_integer(r.q)) continue;
            const int q = static_cast<int>(std::lround(r.q));
            if (!lift_fits(sys->family, q)) continue;
            r.discrepancy = pressure_exact_integer(sys->family, q, exec).estimate - r.estimate;
        }
        *csv = dup(pressure_csv(curve, true));
    });
}

plab_status plab_gibbs_csv(const plab_system* sys, size_t n, size_t N, double q, const plab_options* opts,
                           char** table_csv, char** diagnostics_csv) {
    return guarded([&] {
        require(sys, "sys");
        require(table_csv, "table_csv");
        const Exec exec = exec_of(opts);
        const auto table = marginal_weights(sys->family, n, N, q, exec);
        std::string diag;
        if (diagnostics_csv) {
            const double p_hat = pressure_estimate(sys->family, N, q, exec).estimate;
            std::vector<RatioDiagnostics> rows;
            rows.push_back(gibbs_ratio_diagnostics(sys->family, n, N, q, p_hat, exec));
            diag = pressurelab::diagnostics_csv(rows);
        }
        std::string t = gibbs_csv(table);
        *table_csv = dup(t);
        if (diagnostics_csv) {
            try {
                *diagnostics_csv = dup(diag);
            } catch (...) {
                std::free(*table_csv);
                *table_csv = nullptr;
                throw;
            }
        }
    });
}

plab_status plab_sample_csv(const plab_system* sys, size_t n, double q, size_t count, uint64_t seed,
                            const plab_options* opts, char** csv) {
    return guarded([&] {
        require(sys, "sys");
        require(csv, "csv");
        const auto words = sample_words(sys->family, n, q, count, seed, exec_of(opts));
        std::string s = "index,word,lyapunov\n";
        char buf[64];
        for (std::size_t i = 0; i < words.size(); ++i) {
            const double ly = word_product(sys->family, words[i]).log_norm() / static_cast<double>(n);
            std::snprintf(buf, sizeof buf, "%.12g", ly);
            s += std::to_string(i) + ',' + format_word(words[i], sys->family.alphabet()) + ',' + buf + '\n';
        }
        *csv = dup(s);
    });
}

plab_status plab_spectrum_csv(const plab_system* sys, double qmin, double qmax, double qstep, size_t n, double h,
                              int closed_form, const plab_options* opts, char** csv) {
    return guarded([&] {
        require(sys, "sys");
        require(csv, "csv");
        SpectrumOptions so;
        so.h = h > 0 ? h : kDefaultDerivativeStep;
        so.positive_mode = sys->family.positive();
        const auto grid = make_grid(qmin, qmax, qstep);
        std::vector<SpectrumPoint> points;
        if (closed_form) {
            std::optional<PressureFn> fn;
            if (!sys->demo.empty()) fn = demo_closed_form(sys->demo);
            if (!fn) fail(ErrorKind::unsupported, "no closed-form pressure for this system");
            points = dimension_spectrum(*fn, grid, sys->family.alphabet(), so);
        } else {
            PressureEvaluator eval(sys->family, n, exec_of(opts));
            points = dimension_spectrum([&](double q) { return eval(q); }, grid, sys->family.alphabet(), so);
        }
        *csv = dup(spectrum_csv(points));
    });
}

plab_status plab_demo_report(const char* name, const plab_options* opts, char** report) {
    return guarded([&] {
        require(name, "name");
        require(report, "report");
        *report = dup(run_demo(name, exec_of(opts)));
    });
}

plab_status plab_plot_svg(const char* csv_text, char** svg) {
    return guarded([&] {
        require(csv_text, "csv_text");
        require(svg, "svg");
        *svg = dup(render_pressure_svg(csv_text));
    });
}

}  // extern "C"
