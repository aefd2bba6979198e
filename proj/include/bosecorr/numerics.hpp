#pragma once

// Scalar backends shared by every ensemble computation.
//
// Two interchangeable backends implement one arithmetic contract:
//   Rational  - GMP big rational, always canonical, for exact verification;
//   LogFloat  - natural log of a nonnegative quantity held in a double,
//               with a distinguished zero, for large instances.
// Generic code is templated on the backend and talks to it through the
// free functions in this header. LogFloat has no subtraction; anything that
// needs a signed result goes through signed_value() into the backend's
// SignedScalar type (Rational or double).

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "bosecorr/error.hpp"

namespace bosecorr {

using Rational = mpq_class;
using BigInt = mpz_class;

enum class Mode { Exact, LogFloat };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

class LogFloat {
 public:
  constexpr LogFloat() = default;  // zero

  static constexpr LogFloat zero() { return LogFloat(); }
  static constexpr LogFloat one() { return from_log(0.0); }
  static constexpr LogFloat from_log(double log_value) {
    LogFloat r;
    r.log_ = log_value;
    r.zero_ = false;
    return r;
  }
  /// v must be >= 0 and finite.
  static LogFloat from_value(double v);
  static LogFloat from_rational(const Rational& q);

  constexpr bool is_zero() const { return zero_; }
  /// ln of the value; throws for zero.
  double log() const;
  double value() const;

  friend LogFloat operator*(const LogFloat& a, const LogFloat& b);
  friend LogFloat operator/(const LogFloat& a, const LogFloat& b);
  friend LogFloat operator+(const LogFloat& a, const LogFloat& b);
  LogFloat& operator*=(const LogFloat& b) { return *this = *this * b; }
  LogFloat& operator/=(const LogFloat& b) { return *this = *this / b; }
  LogFloat& operator+=(const LogFloat& b) { return *this = *this + b; }

  friend bool operator==(const LogFloat& a, const LogFloat& b) {
    return a.zero_ == b.zero_ && (a.zero_ || a.log_ == b.log_);
  }
  friend std::partial_ordering operator<=>(const LogFloat& a, const LogFloat& b) {
    if (a.zero_ || b.zero_) return b.zero_ <=> a.zero_;
    return a.log_ <=> b.log_;
  }

 private:
  double log_ = 0.0;
  bool zero_ = true;
};

/// ln(sum exp(v)) over the nonzero entries, max-shifted. Zero entries are
/// skipped; an all-zero list sums to zero. Throws "empty-sum" when empty.
LogFloat log_sum_exp(std::span<const LogFloat> values);

/// Same on raw log-values.
double log_sum_exp(std::span<const double> log_values);

template <class T>
concept ScalarBackend = std::same_as<T, Rational> || std::same_as<T, LogFloat>;

template <ScalarBackend T>
using SignedScalar = std::conditional_t<std::is_same_v<T, Rational>, Rational, double>;

template <ScalarBackend T>
constexpr Mode mode_of() {
  return std::is_same_v<T, Rational> ? Mode::Exact : Mode::LogFloat;
}

/// Runtime-tagged scalar for places where the backend is not a template
/// parameter (serialization, comparisons driven by input files).
using Scalar = std::variant<Rational, LogFloat>;

Mode mode_of(const Scalar& s);

/// Tri-state ordering of two exact scalars by cross-multiplying
/// numerators and denominators. Throws "mixed-backend" otherwise.
std::strong_ordering exact_compare(const Scalar& a, const Scalar& b);
std::strong_ordering exact_compare(const Rational& a, const Rational& b);

/// Parses "p/q", "p" or a decimal-free integer; result is canonical.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const LogFloat& x);

/// ln|q| evaluated without overflowing the double range; -inf for 0.
double log_abs(const Rational& q);
double log_abs(const BigInt& z);

/// Exact q^k for any integer k (q != 0 when k < 0).
Rational pow(const Rational& q, long k);
LogFloat pow(const LogFloat& x, long k);

template <ScalarBackend T>
T zero() {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(0);
  } else {
    return LogFloat::zero();
  }
}

template <ScalarBackend T>
T one() {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(1);
  } else {
    return LogFloat::one();
  }
}

/// Nonnegative integer as a scalar.
template <ScalarBackend T>
T from_int(long n) {
  if (n < 0) throw Error("negative-scalar", "scalars represent nonnegative values");
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(n);
  } else {
    return LogFloat::from_value(static_cast<double>(n));
  }
}

template <ScalarBackend T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return LogFloat::from_rational(q);
  }
}

template <ScalarBackend T>
bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sgn(x) == 0;
  } else {
    return x.is_zero();
  }
}

template <ScalarBackend T>
bool is_positive(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sgn(x) > 0;
  } else {
    return !x.is_zero();
  }
}

/// Natural log of a nonnegative scalar; -inf for zero.
template <ScalarBackend T>
double log_of(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return log_abs(x);
  } else {
    return x.is_zero() ? -std::numeric_limits<double>::infinity() : x.log();
  }
}

template <ScalarBackend T>
double to_double(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x.get_d();
  } else {
    return x.value();
  }
}

template <ScalarBackend T>
SignedScalar<T> signed_value(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x;
  } else {
    return x.value();
  }
}

/// Sum of nonnegative terms; LogFloat goes through log_sum_exp so that no
/// intermediate leaves the log domain. Empty input sums to zero.
template <ScalarBackend T>
T sum(std::span<const T> terms) {
  if constexpr (std::is_same_v<T, Rational>) {
    Rational total = 0;
    for (const auto& t : terms) total += t;
    return total;
  } else {
    if (terms.empty()) return LogFloat::zero();
    return log_sum_exp(terms);
  }
}

template <ScalarBackend T>
T sum(const std::vector<T>& terms) {
  return sum<T>(std::span<const T>(terms));
}

}  // namespace bosecorr
