#include "errors.hpp"

namespace vp {

const char* errc_name(errc c)
{
    switch (c) {
    case errc::ok: return "ok";
    case errc::domain: return "domain";
    case errc::convergence: return "convergence";
    case errc::proximity: return "proximity";
    case errc::pole: return "pole";
    case errc::accuracy: return "accuracy";
    case errc::nonclosure: return "nonclosure";
    case errc::structure: return "structure";
    case errc::topology: return "topology";
    case errc::precondition: return "precondition";
    case errc::invalid_argument: return "invalid_argument";
    case errc::internal: return "internal";
    }
    return "unknown";
}

}  // namespace vp
