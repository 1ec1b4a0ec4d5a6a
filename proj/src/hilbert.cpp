#include "rba/hilbert.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "rba/error.hpp"

namespace rba {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<std::int64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(static_cast<std::int64_t>(n));
    return;
  }
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) {
      out.push_back(static_cast<std::int64_t>(p));
      while (n % p == 0) n /= p;
      factor_into(n, out);
      return;
    }
  }
  const u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Square-class representative of a rational as a nonzero integer: n/d ~ n*d.
BigInt integer_class(const Rational& q) {
  if (q == 0) throw Error(ErrorCode::domain, "Hilbert symbol of zero");
  return boost::multiprecision::numerator(q) * boost::multiprecision::denominator(q);
}

std::pair<int, BigInt> split_off(BigInt n, std::int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return {v, n};
}

int legendre(const BigInt& u, std::int64_t p) {
  BigInt rem = u % p;
  if (rem < 0) rem += p;
  const u64 r = rem.convert_to<u64>();
  if (r == 0) return 0;
  return pow_mod(r, static_cast<u64>(p - 1) / 2, static_cast<u64>(p)) == 1 ? 1 : -1;
}

int mod8(const BigInt& u) {
  BigInt r = u % 8;
  if (r < 0) r += 8;
  return r.convert_to<int>();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mul_mod(x, x, n);
      composite = x != n - 1;
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> prime_divisors(const BigInt& n) {
  if (n == 0) throw Error(ErrorCode::domain, "prime divisors of zero");
  BigInt m = boost::multiprecision::abs(n);
  std::vector<std::int64_t> out;
  // Peel small primes so the cofactor fits in 64 bits for typical inputs.
  for (std::int64_t p = 2; p < 1000 && m > 1; ++p) {
    if (m % p == 0) {
      bool prime = true;
      for (std::int64_t q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
      if (!prime) continue;
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) {
    if (m > BigInt(std::numeric_limits<u64>::max())) {
      throw Error(ErrorCode::domain, "integer too large to factor: " + n.str());
    }
    factor_into(m.convert_to<u64>(), out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int hilbert_symbol(const Rational& a, const Rational& b, Place place) {
  const BigInt x = integer_class(a);
  const BigInt y = integer_class(b);
  if (place.is_infinite()) return (x < 0 && y < 0) ? -1 : 1;
  const std::int64_t p = place.prime;
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw Error(ErrorCode::domain, "place is not a prime");

  const auto [alpha, u] = split_off(x, p);
  const auto [beta, v] = split_off(y, p);
  if (p == 2) {
    const int u8 = mod8(u), v8 = mod8(v);
    const int eps_u = ((u8 - 1) / 2) & 1, eps_v = ((v8 - 1) / 2) & 1;
    const int omega_u = ((u8 * u8 - 1) / 8) & 1, omega_v = ((v8 * v8 - 1) / 8) & 1;
    const int e = eps_u * eps_v + alpha * omega_v + beta * omega_u;
    return (e & 1) ? -1 : 1;
  }
  int sign = 1;
  if ((alpha * beta) & 1 && ((p - 1) / 2) & 1) sign = -sign;
  if (beta & 1) sign *= legendre(u, p);
  if (alpha & 1) sign *= legendre(v, p);
  return sign;
}

std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
  const BigInt prod = 2 * integer_class(a) * integer_class(b);
  std::vector<Place> out;
  for (std::int64_t p : prime_divisors(prod)) out.push_back(Place{p});
  out.push_back(Place::infinity());
  return out;
}

HilbertProfile hilbert_profile(const Rational& a, const Rational& b) {
  HilbertProfile prof;
  for (const Place& v : relevant_places(a, b)) {
    const int s = hilbert_symbol(a, b, v);
    prof.values.emplace_back(v, s);
    prof.product *= s;
    prof.split = prof.split && s == 1;
  }
  return prof;
}

}  // namespace rba
