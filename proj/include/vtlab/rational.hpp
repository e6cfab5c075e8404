#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace vtlab {

/// Exact scalar backend. Algebra-level theorems run on rationals so that
/// rank and nullspace computations carry no rounding doubt.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline std::string num_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str();
}
inline std::string den_string(const Rational& q) {
  return boost::multiprecision::denominator(q).str();
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static const char* backend_name() { return "float"; }
  static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static const char* backend_name() { return "rational"; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
};

}  // namespace vtlab
