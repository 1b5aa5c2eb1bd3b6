#pragma once

#include <gmpxx.h>

#include <string>

namespace pliable {

// Exact arbitrary-precision rational.  GMP keeps values canonicalized
// through its overloaded operators, so equality and sign tests are exact.
using Rational = mpq_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace pliable
