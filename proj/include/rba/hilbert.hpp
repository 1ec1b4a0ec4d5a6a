#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rba/scalar.hpp"

namespace rba {

/// A place of Q: a prime p, or the real place (prime == 0).
struct Place {
  std::int64_t prime = 0;

  static Place infinity() { return Place{0}; }
  bool is_infinite() const noexcept { return prime == 0; }
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(prime); }
  friend bool operator==(const Place&, const Place&) = default;
};

/// Local Hilbert symbol (a, b)_v in {+1, -1}. Throws domain on zero arguments.
int hilbert_symbol(const Rational& a, const Rational& b, Place place);

/// Every place where (a, b)_v can be -1: the primes dividing 2ab (numerators
/// and denominators) in increasing order, followed by infinity.
std::vector<Place> relevant_places(const Rational& a, const Rational& b);

struct HilbertProfile {
  std::vector<std::pair<Place, int>> values;
  /// Product over all listed places; +1 by the product formula.
  int product = 1;
  /// (a, b / Q) is isomorphic to M_2(Q) iff every local symbol is +1.
  bool split = true;
};

HilbertProfile hilbert_profile(const Rational& a, const Rational& b);

/// Distinct prime divisors of |n| (n != 0), ascending.
std::vector<std::int64_t> prime_divisors(const BigInt& n);

bool is_prime(std::uint64_t n);

}  // namespace rba
