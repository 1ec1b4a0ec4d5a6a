#pragma once

#include <cmath>
#include <string>

#include "rba/error.hpp"
#include "rba/scalar.hpp"

namespace rba {

/// Exact element a + b sqrt(D) of Q(sqrt(D)), D a positive non-square.
template <int D>
class Quadratic {
 public:
  Quadratic() = default;
  Quadratic(int n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT

  static Quadratic sqrt_d() { return Quadratic(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  bool is_rational() const { return b_ == 0; }
  double to_double() const { return rba::to_double(a_) + rba::to_double(b_) * std::sqrt(double(D)); }

  Quadratic conjugate() const { return Quadratic(a_, Rational(-b_)); }
  Rational field_norm() const { return a_ * a_ - Rational(D) * b_ * b_; }

  std::string to_string() const {
    if (b_ == 0) return rational_to_string(a_);
    return rational_to_string(a_) + " + " + rational_to_string(b_) + "*sqrt(" + std::to_string(D) + ")";
  }

  /// Sign of the real number a + b sqrt(D), decided exactly.
  int sign() const {
    const int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    // opposite signs: compare a^2 with D b^2
    const Rational lhs = a_ * a_, rhs = Rational(D) * b_ * b_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  Quadratic operator-() const { return Quadratic(Rational(-a_), Rational(-b_)); }
  friend Quadratic operator+(const Quadratic& x, const Quadratic& y) {
    return Quadratic(Rational(x.a_ + y.a_), Rational(x.b_ + y.b_));
  }
  friend Quadratic operator-(const Quadratic& x, const Quadratic& y) {
    return Quadratic(Rational(x.a_ - y.a_), Rational(x.b_ - y.b_));
  }
  friend Quadratic operator*(const Quadratic& x, const Quadratic& y) {
    return Quadratic(Rational(x.a_ * y.a_ + Rational(D) * x.b_ * y.b_),
                     Rational(x.a_ * y.b_ + x.b_ * y.a_));
  }
  friend Quadratic operator/(const Quadratic& x, const Quadratic& y) {
    const Rational nrm = y.field_norm();
    if (nrm == 0) throw Error(ErrorCode::domain, "division by zero in quadratic field");
    const Quadratic num = x * y.conjugate();
    return Quadratic(Rational(num.a_ / nrm), Rational(num.b_ / nrm));
  }
  Quadratic& operator+=(const Quadratic& o) { return *this = *this + o; }
  Quadratic& operator-=(const Quadratic& o) { return *this = *this - o; }
  friend bool operator==(const Quadratic& x, const Quadratic& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Rational a_ = 0;
  Rational b_ = 0;
};

using QSqrt5 = Quadratic<5>;

}  // namespace rba
