#pragma once

#include <stdexcept>
#include <string>

namespace adeg {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated invariant or precondition does not hold for the given input.
struct invariant_violation : error {
    using error::error;
};

// A configurable size guard (basis columns, point counts, arity) was exceeded.
struct guard_exceeded : error {
    using error::error;
};

// Malformed textual input (polynomial files, rational literals, CLI values).
struct parse_error : error {
    using error::error;
};

// Internal consistency check failed; indicates a bug, not bad input.
struct internal_error : error {
    using error::error;
};

} // namespace adeg
