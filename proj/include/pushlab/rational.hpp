#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace pushlab {

// Exact arbitrary-precision rational, used on every identity-checking path.
// Floating point is reserved for Monte Carlo summaries.
using Rational = boost::multiprecision::mpq_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Accepts "p", "-p", "p/q".
inline Rational parse_rational(const std::string& text) {
  try {
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace pushlab
