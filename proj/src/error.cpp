#include "pressurelab/error.hpp"

namespace pressurelab {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::input: return "input error";
        case ErrorKind::parse: return "parse error";
        case ErrorKind::precondition: return "precondition error";
        case ErrorKind::degenerate: return "degenerate system";
        case ErrorKind::size: return "size guard";
        case ErrorKind::unsupported: return "unsupported mode";
        case ErrorKind::convergence: return "convergence failure";
        case ErrorKind::io: return "i/o error";
        case ErrorKind::internal: return "internal error";
    }
    return "error";
}

}  // namespace pressurelab
