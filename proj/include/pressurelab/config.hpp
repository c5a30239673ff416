#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pressurelab/matrix_system.hpp"

namespace pressurelab {

/// JSON system description:
///   { "m": 3, "adjacency": [[...]], "d": 2, "depth": 1,
///     "matrices": { "1": [[...]], ... }, "labels": ["a", "b", "c"] }
/// `adjacency` defaults to the full shift, `depth` to 1. Matrix keys are
/// 1-based words of length `depth`.
struct SystemConfig {
    int m = 0;
    std::optional<std::vector<std::vector<int>>> adjacency;
    int d = 0;
    int depth = 1;
    std::map<std::string, std::vector<std::vector<double>>> matrices;
    std::vector<std::string> labels;

    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Strict parse; errors are ErrorKind::parse with the offending field path.
SystemConfig parse_config_text(const std::string& text);
SystemConfig parse_config(const std::string& path);

std::string emit_config(const SystemConfig& config);

MatrixFamily to_family(const SystemConfig& config);
SystemConfig from_family(const MatrixFamily& family);

}  // namespace pressurelab
