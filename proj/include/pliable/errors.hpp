#pragma once

#include <stdexcept>
#include <string>

namespace pliable {

// Base class for all domain errors raised by this library.  The CLI maps
// these to exit code 2 (input error); internal invariant breaches use
// std::logic_error instead so they are never mistaken for bad input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ground-set mismatch between two ESets (different bit widths).
struct GroundMismatchError : Error {
    using Error::Error;
};

// Violated Family invariant: duplicate member, stale or gapped generation,
// inconsistent provenance.
struct FamilyError : Error {
    using Error::Error;
};

// Malformed serialized input.
struct ParseError : Error {
    using Error::Error;
};

// A configured search budget was exhausted before an answer was reached.
struct BudgetError : Error {
    using Error::Error;
};

}  // namespace pliable
