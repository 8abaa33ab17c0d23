#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "conedual/errors.hpp"

namespace conedual {

/// Exact rational scalar.  Always stored canonically: lowest terms, positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class PolicyKind { ExactRational, Float };

/// Per-instance arithmetic policy.  Tolerances are meaningful only under
/// PolicyKind::Float; the exact policy compares with zero tolerance.
struct ScalarPolicy {
  PolicyKind kind = PolicyKind::ExactRational;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  static ScalarPolicy exact() { return ScalarPolicy{PolicyKind::ExactRational, 0.0, 0.0}; }

  static ScalarPolicy floating(double abs_tol = 1e-9, double rel_tol = 1e-9) {
    if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) {
      throw InvalidInstance("float policy tolerances must be positive");
    }
    if (abs_tol > 1e-3 || rel_tol > 1e-3) {
      throw InvalidInstance("float policy tolerances above 1e-3 are rejected");
    }
    return ScalarPolicy{PolicyKind::Float, abs_tol, rel_tol};
  }

  bool is_exact() const { return kind == PolicyKind::ExactRational; }

  /// Width of the boundary band around zero for a quantity living at the
  /// scale of |x| = `scale`.
  double band(double scale = 0.0) const {
    if (kind == PolicyKind::ExactRational) return 0.0;
    return abs_tol + rel_tol * std::abs(scale);
  }
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.template convert_to<double>(); }
  static int sign(const Rational& v) { return v.sign(); }
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double to_double(double v) { return v; }
  static int sign(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }
  static double abs(double v) { return std::abs(v); }
};

/// Signum of `v` seen through the policy's boundary band: values within
/// band(scale) of zero count as zero.
template <class S>
inline int sign_within_band(const S& v, const ScalarPolicy& policy, double scale = 0.0) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)policy;
    (void)scale;
    return scalar_traits<S>::sign(v);
  } else {
    const double b = policy.band(scale);
    if (v > b) return 1;
    if (v < -b) return -1;
    return 0;
  }
}

namespace detail {

/// Base-10 integer literal with optional sign.  cpp_int's own parser treats a
/// leading zero as a radix prefix, so digits are validated and trimmed here.
inline BigInt parse_decimal_int(std::string s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidInstance("malformed integer literal: " + s);
  }
  const auto nz = s.find_first_not_of('0');
  s = (nz == std::string::npos) ? "0" : s.substr(nz);
  BigInt v(s);
  return neg ? BigInt(-v) : v;
}

}  // namespace detail

/// Parses "p", "p/q", or a plain decimal ("1.25", "-3e-2") into an exact
/// rational.  Decimals convert exactly (base-10 expansion).
inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw InvalidInstance("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num = detail::parse_decimal_int(text.substr(0, slash));
      BigInt den = detail::parse_decimal_int(text.substr(slash + 1));
      if (den == 0) throw InvalidInstance("zero denominator in rational literal");
      return Rational(num, den);
    }
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos) {
      return Rational(detail::parse_decimal_int(text));
    }
  } catch (const std::exception&) {
    throw InvalidInstance("malformed rational literal: " + text);
  }
  // Decimal/scientific form: mantissa digits over a power of ten.
  std::string t = text;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  long exp10 = 0;
  const auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    try {
      exp10 = std::stol(t.substr(epos + 1));
    } catch (const std::exception&) {
      throw InvalidInstance("malformed rational literal: " + text);
    }
    t = t.substr(0, epos);
  }
  const auto dot = t.find('.');
  std::string digits = t;
  if (dot != std::string::npos) {
    digits = t.substr(0, dot) + t.substr(dot + 1);
    exp10 -= static_cast<long>(t.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidInstance("malformed rational literal: " + text);
  }
  Rational r{detail::parse_decimal_int(digits)};
  BigInt pow10 = 1;
  for (long i = 0; i < std::labs(exp10); ++i) pow10 *= 10;
  if (exp10 >= 0) {
    r *= Rational(pow10);
  } else {
    r /= Rational(pow10);
  }
  return neg ? Rational(-r) : r;
}

/// Canonical "p/q" (or bare "p") form, lowest terms, q > 0.
inline std::string rational_to_string(const Rational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace conedual
