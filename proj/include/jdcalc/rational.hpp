#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace jdcalc {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always stored in lowest terms with positive
/// denominator; every arithmetic operation is exact.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_pow(const Rational& base, unsigned exp);

} // namespace jdcalc
