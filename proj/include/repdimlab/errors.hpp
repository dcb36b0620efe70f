#pragma once

#include <stdexcept>
#include <string>

namespace rdl {

/// Malformed input: bad CLI arguments, unparsable files, violated preconditions.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A randomized routine exhausted its retry budget without reaching a verified
/// answer. Never raised in place of a wrong result.
struct inconclusive_error : std::runtime_error {
    explicit inconclusive_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A bound that the experiment asserts (and the theory guarantees) failed to
/// hold on concrete data. Carries enough context to dump a counterexample.
struct bound_violation : std::runtime_error {
    explicit bound_violation(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised by ghost_certificate when pd(x) < n, so no obstruction class exists.
/// A normal outcome for callers, not a failure.
struct no_obstruction : std::runtime_error {
    explicit no_obstruction(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal invariant check failed; indicates a bug, not bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

#define RDL_CHECK(cond, msg)                                     \
    do {                                                         \
        if (!(cond)) throw ::rdl::internal_error(std::string("check failed: ") + (msg)); \
    } while (0)

}  // namespace rdl
