#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "rba/tolerance.hpp"

namespace rba {

/// Arbitrary-precision rational, always normalized (lowest terms, positive
/// denominator).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// A structure constant or derived quantity: either an exact rational or a
/// double. Arithmetic between two exact values stays exact; anything touching a
/// double becomes a double.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q) : value_(std::move(q)) {}  // NOLINT(google-explicit-constructor)
  Scalar(double x) : value_(x) {}               // NOLINT(google-explicit-constructor)
  Scalar(int n) : value_(Rational(n)) {}        // NOLINT(google-explicit-constructor)

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const;
  double to_double() const;

  /// Float copy of this value (identity on doubles).
  Scalar to_float() const { return Scalar(to_double()); }

  bool is_zero(const ToleranceConfig& tol) const;
  /// -1, 0 or +1; zero is decided by eps_zero in float mode.
  int sign(const ToleranceConfig& tol) const;
  /// Exact test in rational mode; |x - round(x)| <= eps_zero otherwise.
  bool is_integer(const ToleranceConfig& tol) const;

  /// "p/q", "p", or the shortest round-trip decimal.
  std::string to_string() const;
  /// Integers and p/q become exact; anything with '.', 'e' or 'E' is a double.
  static Scalar parse(std::string_view text);

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Representation equality: same mode and same value.
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

 private:
  std::variant<Rational, double> value_;
};

/// Continued-fraction snap of x to the best rational with denominator at most
/// max_den, accepted only if it lies within tol of x.
std::optional<Rational> snap_rational(double x, double tol,
                                      std::int64_t max_den = 1'000'000);

inline constexpr std::int64_t kSnapDenominator = 1'000'000;

std::string format_double(double x);
std::string rational_to_string(const Rational& q);
Rational parse_rational(std::string_view text);
double to_double(const Rational& q);

/// p-adic valuation of a nonzero rational.
int padic_valuation(const Rational& q, std::int64_t p);

}  // namespace rba
