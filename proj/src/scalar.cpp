#include "rba/scalar.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "rba/error.hpp"

namespace rba {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::structural: return "structural";
    case ErrorCode::parse: return "parse";
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::no_positive_degree_map: return "no_positive_degree_map";
    case ErrorCode::degree_map_inconsistent: return "degree_map_inconsistent";
    case ErrorCode::center_rank_ambiguous: return "center_rank_ambiguous";
    case ErrorCode::idempotent_separation_failed: return "idempotent_separation_failed";
    case ErrorCode::multiplicity_inconsistency: return "multiplicity_inconsistency";
    case ErrorCode::indicator_out_of_range: return "indicator_out_of_range";
    case ErrorCode::extraction_failed: return "extraction_failed";
    case ErrorCode::not_positive_definite: return "not_positive_definite";
    case ErrorCode::contract_violation: return "contract_violation";
    case ErrorCode::lemma_violation: return "lemma_violation";
    case ErrorCode::domain: return "domain";
  }
  return "unknown";
}

void ToleranceConfig::check() const {
  if (!(eps_zero > 0.0) || !(eps_cluster > 0.0) || !(eps_residual > 0.0)) {
    throw Error(ErrorCode::invalid_input, "tolerances must be strictly positive");
  }
  if (eps_zero > eps_cluster) {
    throw Error(ErrorCode::invalid_input, "eps_zero must not exceed eps_cluster");
  }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string rational_to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return std::to_string(x);
  return std::string(buf, end);
}

namespace {

BigInt parse_int(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::parse, "empty number");
  std::size_t pos = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw Error(ErrorCode::parse, "bad integer '" + std::string(text) + "'");
  BigInt v = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::parse, "bad integer '" + std::string(text) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

const Rational& Scalar::exact() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw Error(ErrorCode::contract_violation, "exact value requested from a float scalar");
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return rba::to_double(*q);
  return std::get<double>(value_);
}

bool Scalar::is_zero(const ToleranceConfig& tol) const { return sign(tol) == 0; }

int Scalar::sign(const ToleranceConfig& tol) const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->sign();
  const double x = std::get<double>(value_);
  if (std::abs(x) <= tol.eps_zero) return 0;
  return x > 0 ? 1 : -1;
}

bool Scalar::is_integer(const ToleranceConfig& tol) const {
  if (const auto* q = std::get_if<Rational>(&value_)) {
    return boost::multiprecision::denominator(*q) == 1;
  }
  const double x = std::get<double>(value_);
  return std::abs(x - std::round(x)) <= tol.eps_zero;
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return rational_to_string(*q);
  return format_double(std::get<double>(value_));
}

Scalar Scalar::parse(std::string_view text) {
  if (text.find_first_of(".eE") != std::string_view::npos ||
      text.find("inf") != std::string_view::npos || text.find("nan") != std::string_view::npos) {
    double x = 0.0;
    const char* first = text.data();
    if (!text.empty() && text[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), x);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x)) {
      throw Error(ErrorCode::parse, "bad decimal '" + std::string(text) + "'");
    }
    return Scalar(x);
  }
  return Scalar(parse_rational(text));
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return Scalar(Rational(-*q));
  return Scalar(-std::get<double>(value_));
}

#define RBA_SCALAR_OP(op)                                                  \
  Scalar operator op(const Scalar& a, const Scalar& b) {                   \
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() op b.exact())); \
    return Scalar(a.to_double() op b.to_double());                         \
  }
RBA_SCALAR_OP(+)
RBA_SCALAR_OP(-)
RBA_SCALAR_OP(*)
#undef RBA_SCALAR_OP

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    if (b.exact() == 0) throw Error(ErrorCode::domain, "division by zero");
    return Scalar(Rational(a.exact() / b.exact()));
  }
  return Scalar(a.to_double() / b.to_double());
}

std::optional<Rational> snap_rational(double x, double tol, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  const double sign = x < 0 ? -1.0 : 1.0;
  double rem = std::abs(x);
  BigInt h_prev = 1, h = static_cast<long long>(std::floor(rem));
  BigInt k_prev = 0, k = 1;
  double frac = rem - std::floor(rem);
  std::optional<Rational> best;
  for (int iter = 0; iter < 64; ++iter) {
    const Rational cand(h, k);
    if (std::abs(to_double(cand) - std::abs(x)) <= tol) {
      best = cand;
      break;
    }
    if (frac < 1e-300) break;
    rem = 1.0 / frac;
    const double a_d = std::floor(rem);
    if (a_d > 1e15) break;
    frac = rem - a_d;
    const BigInt a = static_cast<long long>(a_d);
    const BigInt h_next = a * h + h_prev;
    const BigInt k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  if (!best) return std::nullopt;
  return sign < 0 ? Rational(-*best) : *best;
}

int padic_valuation(const Rational& q, std::int64_t p) {
  if (q == 0) throw Error(ErrorCode::domain, "valuation of zero");
  if (p < 2) throw Error(ErrorCode::domain, "valuation needs a prime");
  int v = 0;
  BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(q));
  BigInt den = boost::multiprecision::denominator(q);
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

}  // namespace rba
