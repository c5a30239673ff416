#pragma once

#include <string>

namespace pressurelab {

/// Renders a pressure-curve CSV (columns looked up by header: q, estimate,
/// and optionally lower/upper) as a standalone SVG 1.1 line chart.
/// Throws ErrorKind::parse on malformed or empty input.
std::string render_pressure_svg(const std::string& csv_text);

}  // namespace pressurelab
