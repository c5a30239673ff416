#pragma once

#include <string>

#include "pressurelab/enumeration.hpp"

namespace pressurelab {

struct CheckReport {
    std::string text;
    bool primitive = false;
};

/// Primitivity, H2 witness, positivity mode and zero-product census for n <= 6.
CheckReport run_check(const MatrixFamily& family, const Exec& exec = {});

/// End-to-end summary for a built-in demo. Throws ErrorKind::input with
/// the list of demos on an unknown name.
std::string run_demo(const std::string& name, const Exec& exec = {});

}  // namespace pressurelab
