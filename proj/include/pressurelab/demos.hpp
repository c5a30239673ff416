#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pressurelab/matrix_system.hpp"

namespace pressurelab {

/// Built-in systems: ex35, ex36, golden, scalar, goldenmean_sft.
std::vector<std::string> demo_names();
bool is_demo(const std::string& name);
MatrixFamily demo_family(const std::string& name);

/// Known pressure function of a demo, when one exists.
std::optional<std::function<double(double)>> demo_closed_form(const std::string& name);

}  // namespace pressurelab
