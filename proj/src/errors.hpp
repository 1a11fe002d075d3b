#pragma once

#include <stdexcept>
#include <string>

namespace vp {

enum class errc {
    ok = 0,
    domain = 1,
    convergence = 2,
    proximity = 3,
    pole = 4,
    accuracy = 5,
    nonclosure = 6,
    structure = 7,
    topology = 8,
    precondition = 9,
    invalid_argument = 10,
    internal = 11,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace vp
