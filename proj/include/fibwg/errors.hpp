// errors.hpp -- error type shared by all fibwg modules.
#pragma once

#include <stdexcept>
#include <string>

namespace fibwg {

// Computation-level failure: unsatisfied bound-state condition, eigensolver
// non-convergence, out-of-range site index, resource cap exceeded.
// Configuration errors (bad parameters, malformed specs) throw
// std::invalid_argument instead; the CLI maps the two classes to distinct
// exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fibwg
