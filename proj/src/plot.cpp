#include "pressurelab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

#include "pressurelab/error.hpp"

namespace pressurelab {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<double> number(const std::string& s, std::size_t row) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
        fail(ErrorKind::parse, "row " + std::to_string(row) + ": '" + s + "' is not a number");
    return v;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Row {
    double q;
    double estimate;
    std::optional<double> lower, upper;
};

}  // namespace

std::string render_pressure_svg(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::parse, "empty CSV");
    const auto header = split(line);
    auto column = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    };
    const auto cq = column("q"), ce = column("estimate"), cl = column("lower"), cu = column("upper");
    if (!cq || !ce) fail(ErrorKind::parse, "CSV header must contain q and estimate columns");

    std::vector<Row> rows;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split(line);
        if (f.size() != header.size())
            fail(ErrorKind::parse, "row " + std::to_string(row_no) + " has " + std::to_string(f.size()) +
                                       " fields, header has " + std::to_string(header.size()));
        Row r;
        const auto q = number(f[*cq], row_no);
        const auto e = number(f[*ce], row_no);
        if (!q || !e) fail(ErrorKind::parse, "row " + std::to_string(row_no) + ": q and estimate are required");
        r.q = *q;
        r.estimate = *e;
        if (cl) r.lower = number(f[*cl], row_no);
        if (cu) r.upper = number(f[*cu], row_no);
        rows.push_back(r);
    }
    if (rows.empty()) fail(ErrorKind::parse, "CSV has no data rows");

    double xmin = rows.front().q, xmax = xmin, ymin = rows.front().estimate, ymax = ymin;
    for (const auto& r : rows) {
        xmin = std::min(xmin, r.q);
        xmax = std::max(xmax, r.q);
        for (auto v : {std::optional<double>(r.estimate), r.lower, r.upper})
            if (v) {
                ymin = std::min(ymin, *v);
                ymax = std::max(ymax, *v);
            }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    constexpr double W = 640, H = 400, L = 60, R = 20, T = 20, B = 40;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"400\" "
           "viewBox=\"0 0 640 400\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n"
        << "<line x1=\"" << num(L) << "\" y1=\"" << num(H - B) << "\" x2=\"" << num(W - R) << "\" y2=\""
        << num(H - B) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << num(L) << "\" y1=\"" << num(T) << "\" x2=\"" << num(L) << "\" y2=\"" << num(H - B)
        << "\" stroke=\"black\"/>\n";

    // bracket band over maximal runs where both bounds exist
    std::size_t i = 0;
    while (i < rows.size()) {
        if (!(rows[i].lower && rows[i].upper)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < rows.size() && rows[j].lower && rows[j].upper) ++j;
        svg << "<polygon class=\"band\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
        for (std::size_t k = i; k < j; ++k) svg << num(px(rows[k].q)) << ',' << num(py(*rows[k].upper)) << ' ';
        for (std::size_t k = j; k-- > i;)
            svg << num(px(rows[k].q)) << ',' << num(py(*rows[k].lower)) << (k > i ? " " : "");
        svg << "\"/>\n";
        i = j;
    }

    svg << "<polyline class=\"estimate\" fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < rows.size(); ++k)
        svg << num(px(rows[k].q)) << ',' << num(py(rows[k].estimate)) << (k + 1 < rows.size() ? " " : "");
    svg << "\"/>\n";

    char label[128];
    std::snprintf(label, sizeof label, "q from %.6g to %.6g", xmin, xmax);
    svg << "<text x=\"" << num(W / 2) << "\" y=\"" << num(H - 10) << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
    std::snprintf(label, sizeof label, "P(q) from %.6g to %.6g", ymin, ymax);
    svg << "<text x=\"15\" y=\"" << num(H / 2) << "\" transform=\"rotate(-90 15 " << num(H / 2)
        << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace pressurelab
