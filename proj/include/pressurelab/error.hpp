#pragma once

#include <stdexcept>
#include <string>

namespace pressurelab {

enum class ErrorKind {
    input,         // malformed argument or out-of-range symbol
    parse,         // configuration could not be read
    precondition,  // mathematical precondition violated (e.g. q <= 0 for an upper bound)
    degenerate,    // every product vanishes
    size,          // enumeration or lift guard exceeded
    unsupported,   // operation not defined for this family mode
    convergence,   // iterative method did not converge
    io,
    internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace pressurelab
