#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>

#include "pressurelab.h"

namespace {

struct Sys {
    plab_system* p = nullptr;
    ~Sys() { plab_system_free(p); }
};

struct Str {
    char* p = nullptr;
    ~Str() { plab_string_free(p); }
    std::string s() const { return p ? p : ""; }
};

}  // namespace

TEST_CASE("version and names") {
    CHECK(std::string(plab_version()).size() > 0);
    CHECK(std::string(plab_demo_names()) == "ex35,ex36,golden,scalar,goldenmean_sft");
    CHECK(std::string(plab_status_name(PLAB_E_SIZE)) == "size");
}

TEST_CASE("demo systems and accessors") {
    Sys sys;
    REQUIRE(plab_system_demo("golden", &sys.p) == PLAB_OK);
    CHECK(plab_system_alphabet(sys.p) == 3);
    CHECK(plab_system_dim(sys.p) == 2);
    CHECK(plab_system_depth(sys.p) == 1);
    int primitive = 0, exponent = 0;
    CHECK(plab_primitivity(sys.p, &primitive, &exponent) == PLAB_OK);
    CHECK(primitive == 1);
    CHECK(exponent == 1);
    plab_h2 h2{};
    CHECK(plab_check_h2(sys.p, 0, &h2) == PLAB_OK);
    CHECK(h2.satisfied == 1);
    CHECK(h2.r == 1);
    CHECK(h2.b == doctest::Approx(1.5));
}

TEST_CASE("unknown demo lists the alternatives") {
    Sys sys;
    CHECK(plab_system_demo("nope", &sys.p) == PLAB_E_INPUT);
    CHECK(sys.p == nullptr);
    CHECK(std::string(plab_last_error()).find("goldenmean_sft") != std::string::npos);
}

TEST_CASE("parse errors") {
    Sys sys;
    CHECK(plab_system_parse("{\"m\":2}", &sys.p) == PLAB_E_PARSE);
    CHECK(std::string(plab_last_error()).find("$.d") != std::string::npos);
    CHECK(plab_system_load("/nonexistent/file.json", &sys.p) == PLAB_E_IO);
    CHECK(plab_system_parse(nullptr, &sys.p) == PLAB_E_INPUT);
}

TEST_CASE("json round trip through handles") {
    Sys a, b;
    REQUIRE(plab_system_demo("ex36", &a.p) == PLAB_OK);
    Str json;
    REQUIRE(plab_system_to_json(a.p, &json.p) == PLAB_OK);
    REQUIRE(plab_system_parse(json.p, &b.p) == PLAB_OK);
    Str ja;
    REQUIRE(plab_system_to_json(b.p, &ja.p) == PLAB_OK);
    CHECK(ja.s() == json.s());
}

TEST_CASE("pressure entry points") {
    Sys sys;
    REQUIRE(plab_system_demo("ex35", &sys.p) == PLAB_OK);
    plab_pressure r{};
    REQUIRE(plab_pressure_exact(sys.p, 2, &r) == PLAB_OK);
    CHECK(std::fabs(r.estimate - std::log(10.0)) < 1e-9);
    CHECK(r.method == 1);
    plab_options opts{2, 0};
    REQUIRE(plab_pressure_estimate(sys.p, 12, 1.0, &opts, &r) == PLAB_OK);
    CHECK(r.n_used == 12);
    CHECK(std::isnan(r.lower));  // no H2 witness for ex35
    CHECK(std::isfinite(r.upper));
    double log_s = 0;
    REQUIRE(plab_partition_sum_log(sys.p, 2, 2.0, &opts, &log_s) == PLAB_OK);
    CHECK(std::exp(log_s) == doctest::Approx(292.0));
    CHECK(plab_pressure_exact(sys.p, 0, &r) == PLAB_E_PRECONDITION);
}

TEST_CASE("pressure csv cross-checks integer q") {
    Sys sys;
    REQUIRE(plab_system_demo("scalar", &sys.p) == PLAB_OK);
    Str csv;
    REQUIRE(plab_pressure_csv(sys.p, 0.5, 2.0, 0.5, 6, nullptr, &csv.p) == PLAB_OK);
    // gluing factor 1 and unit norms put the certified lower bound at 0
    const std::string text = csv.s();
    CHECK(text.rfind("q,n,estimate,lower,upper,method,discrepancy\n"
                     "0.5,6,0.69314718056,0,0.69314718056,enumeration,\n"
                     "1,6,0.69314718056,0,0.69314718056,enumeration,",
                     0) == 0);
    // discrepancy only at integer q, and tiny
    std::size_t lines = 0, filled = 0;
    for (std::size_t pos = text.find('\n'); pos + 1 < text.size(); pos = text.find('\n', pos + 1)) {
        const std::size_t end = text.find('\n', pos + 1);
        const std::string row = text.substr(pos + 1, end - pos - 1);
        const std::string last = row.substr(row.rfind(',') + 1);
        ++lines;
        if (!last.empty()) {
            ++filled;
            CHECK(std::fabs(std::stod(last)) < 1e-12);
        }
    }
    CHECK(lines == 4);
    CHECK(filled == 2);
}

TEST_CASE("size guard maps to its own status") {
    Sys sys;
    REQUIRE(plab_system_demo("golden", &sys.p) == PLAB_OK);
    plab_options opts{1, 1000};
    plab_pressure r{};
    CHECK(plab_pressure_estimate(sys.p, 10, 1.0, &opts, &r) == PLAB_E_SIZE);
}

TEST_CASE("gibbs, sample and spectrum text") {
    Sys sys;
    REQUIRE(plab_system_demo("golden", &sys.p) == PLAB_OK);
    Str table, diag;
    REQUIRE(plab_gibbs_csv(sys.p, 2, 8, 1.0, nullptr, &table.p, &diag.p) == PLAB_OK);
    CHECK(table.s().rfind("word,weight\n", 0) == 0);
    CHECK(table.s().find("\ntotal,1\n") != std::string::npos);
    CHECK(diag.s().rfind("context,min,q25,median,q75,max,count\n", 0) == 0);

    Str samples;
    REQUIRE(plab_sample_csv(sys.p, 5, 1.0, 3, 7, nullptr, &samples.p) == PLAB_OK);
    CHECK(samples.s().rfind("index,word,lyapunov\n0,", 0) == 0);

    Str spectrum;
    CHECK(plab_spectrum_csv(sys.p, 0.5, 2.0, 0.5, 8, 0.05, 1, nullptr, &spectrum.p) == PLAB_E_UNSUPPORTED);
    REQUIRE(plab_spectrum_csv(sys.p, 0.5, 2.0, 0.5, 8, 0.05, 0, nullptr, &spectrum.p) == PLAB_OK);
    CHECK(spectrum.s().rfind("q,alpha,f_alpha,flag\n", 0) == 0);
}

TEST_CASE("threads from the environment") {
    Sys sys;
    REQUIRE(plab_system_demo("golden", &sys.p) == PLAB_OK);
    setenv("PRESSURELAB_THREADS", "4", 1);
    Str a;
    REQUIRE(plab_pressure_csv(sys.p, 1.0, 2.0, 0.5, 8, nullptr, &a.p) == PLAB_OK);
    setenv("PRESSURELAB_THREADS", "junk", 1);
    Str b;
    REQUIRE(plab_pressure_csv(sys.p, 1.0, 2.0, 0.5, 8, nullptr, &b.p) == PLAB_OK);
    unsetenv("PRESSURELAB_THREADS");
    CHECK(a.s() == b.s());
}

TEST_CASE("plot") {
    Str svg;
    REQUIRE(plab_plot_svg("q,estimate\n1,2\n2,3\n", &svg.p) == PLAB_OK);
    CHECK(svg.s().find("<svg") != std::string::npos);
    CHECK(plab_plot_svg("", &svg.p) == PLAB_E_PARSE);
}

TEST_CASE("reports") {
    Sys sys;
    REQUIRE(plab_system_demo("ex35", &sys.p) == PLAB_OK);
    Str report;
    int primitive = 0;
    REQUIRE(plab_check_report(sys.p, nullptr, &report.p, &primitive) == PLAB_OK);
    CHECK(primitive == 1);
    CHECK(report.s().find("H2: fails") != std::string::npos);
    Str demo;
    REQUIRE(plab_demo_report("scalar", nullptr, &demo.p) == PLAB_OK);
    CHECK(demo.s().find("log 2") != std::string::npos);
}
