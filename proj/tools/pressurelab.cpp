// Command-line front end. Talks to the library through the C API only.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pressurelab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitSize = 3;

struct Failure {
    int code;
};

int exit_code(plab_status s) {
    switch (s) {
        case PLAB_OK: return kExitOk;
        case PLAB_E_PRECONDITION: return kExitPrecondition;
        case PLAB_E_SIZE: return kExitSize;
        default: return kExitUsage;
    }
}

void check(plab_status s) {
    if (s == PLAB_OK) return;
    std::cerr << "error (" << plab_status_name(s) << "): " << plab_last_error() << "\n";
    throw Failure{exit_code(s)};
}

// Owns a string allocated by the library.
struct Text {
    char* p = nullptr;
    ~Text() { plab_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct System {
    plab_system* p = nullptr;
    ~System() { plab_system_free(p); }
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error (io): cannot open " << path << " for writing\n";
        throw Failure{kExitUsage};
    }
    f << text;
}

struct Source {
    std::string config;
    std::string demo;
};

void add_source(CLI::App* cmd, Source& src) {
    auto* c = cmd->add_option("--config", src.config, "JSON system description");
    auto* d = cmd->add_option("--demo", src.demo, "built-in system");
    c->excludes(d);
}

void load(const Source& src, System& sys) {
    if (!src.config.empty())
        check(plab_system_load(src.config.c_str(), &sys.p));
    else if (!src.demo.empty())
        check(plab_system_demo(src.demo.c_str(), &sys.p));
    else {
        std::cerr << "error: one of --config or --demo is required\n";
        throw Failure{kExitUsage};
    }
}

// Everything except `check` refuses non-primitive shifts.
void require_primitive(const System& sys) {
    int primitive = 0;
    check(plab_primitivity(sys.p, &primitive, nullptr));
    if (!primitive) {
        std::cerr << "error (precondition): the adjacency matrix is not primitive\n";
        throw Failure{kExitPrecondition};
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pressure functions, Gibbs measures and multifractal spectra of matrix products"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", plab_version());

    plab_options opts{};
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: PRESSURELAB_THREADS or 1)");

    Source src;
    std::string out;
    double qmin = 0.5, qmax = 3.0, qstep = 0.05, q = 1.0, h = 0.05;
    std::size_t n = 12, N = 12, count = 1000;
    std::uint64_t seed = 1;
    std::size_t gibbs_n = 4;
    bool closed_form = false;
    std::string diagnostics, csv_path, demo_name;

    auto* check_cmd = app.add_subcommand("check", "primitivity, H2 and positivity report");
    add_source(check_cmd, src);

    auto* pressure_cmd = app.add_subcommand("pressure", "pressure curve as CSV");
    add_source(pressure_cmd, src);
    pressure_cmd->add_option("--qmin", qmin);
    pressure_cmd->add_option("--qmax", qmax);
    pressure_cmd->add_option("--qstep", qstep);
    pressure_cmd->add_option("--n", n, "word length");
    pressure_cmd->add_option("--out", out);

    auto* gibbs_cmd = app.add_subcommand("gibbs", "level-n Gibbs weights as CSV");
    add_source(gibbs_cmd, src);
    gibbs_cmd->add_option("--n", gibbs_n, "cylinder length");
    gibbs_cmd->add_option("--N", N, "source level");
    gibbs_cmd->add_option("--q", q);
    gibbs_cmd->add_option("--out", out);
    gibbs_cmd->add_option("--diagnostics", diagnostics, "write Gibbs ratio diagnostics here");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "multifractal spectrum as CSV");
    add_source(spectrum_cmd, src);
    spectrum_cmd->add_option("--qmin", qmin);
    spectrum_cmd->add_option("--qmax", qmax);
    spectrum_cmd->add_option("--qstep", qstep);
    spectrum_cmd->add_option("--n", n);
    spectrum_cmd->set_help_flag("--help", "Print this help message and exit");
    spectrum_cmd->add_option("--h", h, "derivative step");
    spectrum_cmd->add_flag("--closed-form", closed_form, "use the demo's known pressure function");
    spectrum_cmd->add_option("--out", out);

    auto* sample_cmd = app.add_subcommand("sample", "draw words from the level-n Gibbs table");
    add_source(sample_cmd, src);
    sample_cmd->add_option("--n", n);
    sample_cmd->add_option("--q", q);
    sample_cmd->add_option("--count", count);
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--out", out);

    auto* demo_cmd = app.add_subcommand("demo", "end-to-end summary of a built-in system");
    demo_cmd->add_option("name", demo_name, std::string("one of ") + plab_demo_names())->required();

    auto* plot_cmd = app.add_subcommand("plot", "render a pressure CSV as SVG");
    plot_cmd->add_option("--csv", csv_path, "pressure curve CSV")->required();
    plot_cmd->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    opts.threads = threads;

    try {
        System sys;
        if (*check_cmd) {
            load(src, sys);
            Text report;
            int primitive = 0;
            check(plab_check_report(sys.p, &opts, &report.p, &primitive));
            std::cout << report.str();
            return primitive ? kExitOk : kExitPrecondition;
        }
        if (*pressure_cmd) {
            load(src, sys);
            require_primitive(sys);
            Text csv;
            check(plab_pressure_csv(sys.p, qmin, qmax, qstep, n, &opts, &csv.p));
            emit(csv.str(), out);
        } else if (*gibbs_cmd) {
            load(src, sys);
            require_primitive(sys);
            Text table, diag;
            check(plab_gibbs_csv(sys.p, gibbs_n, N, q, &opts, &table.p, diagnostics.empty() ? nullptr : &diag.p));
            emit(table.str(), out);
            if (!diagnostics.empty()) emit(diag.str(), diagnostics);
        } else if (*spectrum_cmd) {
            load(src, sys);
            require_primitive(sys);
            Text csv;
            check(plab_spectrum_csv(sys.p, qmin, qmax, qstep, n, h, closed_form ? 1 : 0, &opts, &csv.p));
            emit(csv.str(), out);
        } else if (*sample_cmd) {
            load(src, sys);
            require_primitive(sys);
            Text csv;
            check(plab_sample_csv(sys.p, n, q, count, seed, &opts, &csv.p));
            emit(csv.str(), out);
        } else if (*demo_cmd) {
            Text report;
            check(plab_demo_report(demo_name.c_str(), &opts, &report.p));
            std::cout << report.str();
        } else if (*plot_cmd) {
            std::ifstream f(csv_path, std::ios::binary);
            if (!f) {
                std::cerr << "error (io): cannot read " << csv_path << "\n";
                return kExitUsage;
            }
            std::ostringstream body;
            body << f.rdbuf();
            Text svg;
            check(plab_plot_svg(body.str().c_str(), &svg.p));
            emit(svg.str(), out);
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return kExitOk;
}
