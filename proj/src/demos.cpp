#include "pressurelab/demos.hpp"

#include <cmath>

#include "pressurelab/error.hpp"

namespace pressurelab {

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Matrix scalar(double a) {
    Matrix m(1, 1);
    m << a;
    return m;
}

}  // namespace

std::vector<std::string> demo_names() { return {"ex35", "ex36", "golden", "scalar", "goldenmean_sft"}; }

bool is_demo(const std::string& name) {
    for (const auto& n : demo_names())
        if (n == name) return true;
    return false;
}

MatrixFamily demo_family(const std::string& name) {
    if (name == "ex35")  // diagonal pair with reducible sum
        return MatrixFamily(SubshiftSpec::full_shift(2), {mat2(2, 0, 0, 1), mat2(2, 0, 0, 3)});
    if (name == "ex36")
        return MatrixFamily(SubshiftSpec::full_shift(2), {mat2(1, 1, 0, 1), mat2(1, 1, 1, 1)});
    if (name == "golden")  // golden-ratio Bernoulli convolution, three-map form
        return MatrixFamily(SubshiftSpec::full_shift(3),
                            {mat2(1, 1, 0, 1), mat2(0.5, 0.5, 0.5, 0.5), mat2(1, 0, 1, 1)});
    if (name == "scalar") return MatrixFamily(SubshiftSpec::full_shift(2), {scalar(1), scalar(1)});
    if (name == "goldenmean_sft")
        return MatrixFamily(SubshiftSpec(2, {1, 1, 1, 0}), {scalar(1), scalar(1)});
    std::string list;
    for (const auto& n : demo_names()) list += (list.empty() ? "" : ", ") + n;
    fail(ErrorKind::input, "unknown demo '" + name + "'; available: " + list);
}

std::optional<std::function<double(double)>> demo_closed_form(const std::string& name) {
    if (name == "ex35")
        return [](double q) { return std::max((q + 1.0) * std::log(2.0), std::log1p(std::pow(3.0, q))); };
    if (name == "scalar") return [](double) { return std::log(2.0); };
    if (name == "goldenmean_sft") return [](double) { return std::log((1.0 + std::sqrt(5.0)) / 2.0); };
    if (!is_demo(name)) (void)demo_family(name);
    return std::nullopt;
}

}  // namespace pressurelab
