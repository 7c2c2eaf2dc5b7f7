#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace hfk {

// All linear algebra over the region/vertex spaces is exact; no floating
// point touches the diagram layer.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace hfk
