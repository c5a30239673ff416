#include "pressurelab/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pressurelab/error.hpp"

namespace pressurelab {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { fail(ErrorKind::parse, path + ": " + what); }

int get_int(const json& j, const std::string& path, int lo, int hi) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > hi) bad(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]");
    return static_cast<int>(v);
}

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

SystemConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse, "invalid JSON at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    }
    if (!root.is_object()) bad("$", "expected an object");
    static const std::set<std::string> known{"m", "adjacency", "d", "depth", "matrices", "labels"};
    for (auto it = root.begin(); it != root.end(); ++it)
        if (!known.count(it.key())) bad("$." + it.key(), "unknown field");
    for (const char* required : {"m", "d", "matrices"})
        if (!root.contains(required)) bad(std::string("$.") + required, "missing required field");

    SystemConfig c;
    c.m = get_int(root["m"], "$.m", 2, kMaxAlphabet);
    c.d = get_int(root["d"], "$.d", 1, kMaxDim);
    if (root.contains("depth")) c.depth = get_int(root["depth"], "$.depth", 1, 8);

    if (root.contains("adjacency")) {
        const auto& a = root["adjacency"];
        if (!a.is_array() || a.size() != static_cast<std::size_t>(c.m))
            bad("$.adjacency", "expected " + std::to_string(c.m) + " rows");
        std::vector<std::vector<int>> rows;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto path = "$.adjacency[" + std::to_string(i) + "]";
            if (!a[i].is_array() || a[i].size() != static_cast<std::size_t>(c.m))
                bad(path, "expected a row of " + std::to_string(c.m) + " entries");
            std::vector<int> row;
            for (std::size_t j = 0; j < a[i].size(); ++j)
                row.push_back(get_int(a[i][j], path + "[" + std::to_string(j) + "]", 0, 1));
            rows.push_back(std::move(row));
        }
        c.adjacency = std::move(rows);
    }

    const auto& mats = root["matrices"];
    if (!mats.is_object()) bad("$.matrices", "expected an object keyed by words");
    for (auto it = mats.begin(); it != mats.end(); ++it) {
        const auto path = "$.matrices[\"" + it.key() + "\"]";
        Word w;
        try {
            w = parse_word(it.key(), c.m);
        } catch (const Error& e) {
            bad(path, e.what());
        }
        if (w.size() != static_cast<std::size_t>(c.depth))
            bad(path, "key must be a word of length " + std::to_string(c.depth));
        const auto& v = it.value();
        if (!v.is_array() || v.size() != static_cast<std::size_t>(c.d))
            bad(path, "expected " + std::to_string(c.d) + " rows");
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto rpath = path + "[" + std::to_string(i) + "]";
            if (!v[i].is_array()) bad(rpath, "expected an array");
            if (v[i].size() != static_cast<std::size_t>(c.d))
                bad(rpath, "ragged row: expected " + std::to_string(c.d) + " entries, got " +
                               std::to_string(v[i].size()));
            std::vector<double> row;
            for (std::size_t j = 0; j < v[i].size(); ++j) {
                const auto epath = rpath + "[" + std::to_string(j) + "]";
                if (!v[i][j].is_number()) bad(epath, "expected a number");
                const double x = v[i][j].get<double>();
                if (x < 0.0) {
                    std::ostringstream os;
                    os << "negative entry " << x << " in matrix " << it.key() << " at row " << i + 1 << ", column "
                       << j + 1;
                    bad(epath, os.str());
                }
                row.push_back(x);
            }
            rows.push_back(std::move(row));
        }
        c.matrices[it.key()] = std::move(rows);
    }

    if (root.contains("labels")) {
        const auto& l = root["labels"];
        if (!l.is_array() || l.size() != static_cast<std::size_t>(c.m))
            bad("$.labels", "expected " + std::to_string(c.m) + " strings");
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!l[i].is_string()) bad("$.labels[" + std::to_string(i) + "]", "expected a string");
            c.labels.push_back(l[i].get<std::string>());
        }
    }

    // semantic checks: admissibility coverage and matrix validity
    try {
        (void)to_family(c);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::parse) throw;
        fail(ErrorKind::parse, e.what());
    }
    return c;
}

SystemConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

std::string emit_config(const SystemConfig& c) {
    nlohmann::ordered_json j;
    j["m"] = c.m;
    if (c.adjacency) j["adjacency"] = *c.adjacency;
    j["d"] = c.d;
    j["depth"] = c.depth;
    nlohmann::ordered_json mats = nlohmann::ordered_json::object();
    for (const auto& [key, rows] : c.matrices) mats[key] = rows;
    j["matrices"] = mats;
    if (!c.labels.empty()) j["labels"] = c.labels;
    return j.dump(2) + "\n";
}

MatrixFamily to_family(const SystemConfig& c) {
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(c.m) * c.m, 1);
    if (c.adjacency)
        for (int i = 0; i < c.m; ++i)
            for (int j = 0; j < c.m; ++j) adj[i * c.m + j] = static_cast<std::uint8_t>((*c.adjacency)[i][j]);
    SubshiftSpec spec(c.m, std::move(adj));

    std::size_t slots = 1;
    for (int i = 0; i < c.depth; ++i) slots *= static_cast<std::size_t>(c.m);
    std::vector<Matrix> table(slots, Matrix::Zero(c.d, c.d));
    std::vector<char> given(slots, 0);
    for (const auto& [key, rows] : c.matrices) {
        const Word w = parse_word(key, c.m);
        if (w.size() != static_cast<std::size_t>(c.depth))
            bad("$.matrices[\"" + key + "\"]", "key must be a word of length " + std::to_string(c.depth));
        if (!is_admissible(spec, w)) bad("$.matrices[\"" + key + "\"]", "word is not admissible");
        std::size_t code = 0;
        for (auto s : w.symbols) code = code * static_cast<std::size_t>(c.m) + s;
        Matrix mtx(c.d, c.d);
        for (int i = 0; i < c.d; ++i)
            for (int j = 0; j < c.d; ++j) mtx(i, j) = rows.at(i).at(j);
        table[code] = mtx;
        given[code] = 1;
    }
    for (const auto& w : enumerate_words(spec, static_cast<std::size_t>(c.depth))) {
        std::size_t code = 0;
        for (auto s : w.symbols) code = code * static_cast<std::size_t>(c.m) + s;
        if (!given[code]) bad("$.matrices", "missing matrix for admissible word " + format_word(w, c.m));
    }
    return MatrixFamily(std::move(spec), c.depth, c.d, std::move(table));
}

SystemConfig from_family(const MatrixFamily& family) {
    SystemConfig c;
    c.m = family.alphabet();
    c.d = family.dim();
    c.depth = family.depth();
    std::vector<std::vector<int>> adj(c.m, std::vector<int>(c.m));
    for (int i = 0; i < c.m; ++i)
        for (int j = 0; j < c.m; ++j) adj[i][j] = family.spec().adjacency()[i * c.m + j];
    c.adjacency = std::move(adj);
    for (const auto& w : enumerate_words(family.spec(), static_cast<std::size_t>(c.depth))) {
        const auto& mtx = family.at(w.symbols.data());
        std::vector<std::vector<double>> rows(c.d, std::vector<double>(c.d));
        for (int i = 0; i < c.d; ++i)
            for (int j = 0; j < c.d; ++j) rows[i][j] = mtx(i, j);
        c.matrices[format_word(w, c.m)] = std::move(rows);
    }
    return c;
}

}  // namespace pressurelab
