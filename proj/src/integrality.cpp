#include "rba/integrality.hpp"

#include <algorithm>

#include "rba/error.hpp"

namespace rba {

std::string_view to_string(ObstructionVerdict v) {
  switch (v) {
    case ObstructionVerdict::obstructed_non_integral: return "obstructed-non-integral";
    case ObstructionVerdict::no_obstruction: return "no-obstruction";
    case ObstructionVerdict::inadmissible: return "inadmissible";
  }
  return "unknown";
}

IntegralityReport integral_check(const Rba& rba, const ToleranceConfig& tol) {
  IntegralityReport rep;
  const std::size_t r = rba.rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const Scalar& v = rba.lambda(i, j, k);
        if (!v.is_integer(tol)) rep.offending.push_back({i, j, k, v});
      }
  rep.integral = rep.offending.empty();
  return rep;
}

TwoAdicRow two_adic_row(const Rational& phi1, const Rational& phi2, const Rational& phi3) {
  TwoAdicRow row{phi1, phi2, phi3, Rational(0), false, {}, ObstructionVerdict::inadmissible};
  row.phi3_formula = -(1 + 2 * phi1 + 2 * phi2) / Rational(2);
  row.relation_holds = 1 + 2 * phi1 + 2 * phi2 + 2 * phi3 == 0;
  const std::array<const Rational*, 3> vals{&row.phi1, &row.phi2, &row.phi3};
  bool non_integral = false;
  for (std::size_t c = 0; c < 3; ++c) {
    if (*vals[c] != 0) {
      row.valuations[c] = padic_valuation(*vals[c], 2);
      non_integral = non_integral || *row.valuations[c] < 0;
    }
  }
  if (row.relation_holds) {
    row.verdict = non_integral ? ObstructionVerdict::obstructed_non_integral : ObstructionVerdict::no_obstruction;
  }
  return row;
}

bool integer_class1_row_exists(long long a, long long b, long long c) {
  return 1 + 2 * (static_cast<__int128>(a) + b + c) == 0;
}

TwoAdicReport two_adic_obstruction(const Rba& rba, const CharacterTable& table, const ToleranceConfig& tol) {
  if (rba.rank() != 7) throw Error(ErrorCode::precondition, "two-adic obstruction needs rank 7");
  std::vector<int> degrees;
  for (const auto& c : table.rows) degrees.push_back(c.degree);
  if (degrees != std::vector<int>{1, 1, 1, 2}) throw Error(ErrorCode::precondition, "degrees are not (1,1,1,2)");
  if (rba.real_count() != 1) throw Error(ErrorCode::precondition, "needs exactly one *-invariant element");
  const auto pairs = rba.nonreal_pairs();

  auto rational_value = [&](const Character& c, std::size_t i) -> Rational {
    if (i < c.exact_values.size() && c.exact_values[i]) return *c.exact_values[i];
    const auto v = c.values[static_cast<Eigen::Index>(i)];
    if (std::abs(v.imag()) <= tol.eps_residual) {
      if (auto q = snap_rational(v.real(), tol.eps_residual * std::max(1.0, std::abs(v.real())), kSnapDenominator)) {
        return *q;
      }
    }
    throw Error(ErrorCode::precondition, "obstruction check requires rational table");
  };

  TwoAdicReport rep;
  for (std::size_t c = 1; c < table.size(); ++c) {
    const Character& chi = table[c];
    if (chi.degree != 1) continue;
    std::array<Rational, 3> phi;
    for (std::size_t p = 0; p < 3; ++p) {
      phi[p] = rational_value(chi, pairs[p].first);
      if (rational_value(chi, pairs[p].second) != phi[p]) {
        throw Error(ErrorCode::precondition, "degree-1 character is not real-valued");
      }
    }
    rep.rows.push_back(two_adic_row(phi[0], phi[1], phi[2]));
  }
  const bool any_obstructed = std::any_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) {
    return r.verdict == ObstructionVerdict::obstructed_non_integral;
  });
  const bool any_bad = std::any_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) {
    return r.verdict == ObstructionVerdict::inadmissible;
  });
  rep.verdict = any_bad ? ObstructionVerdict::inadmissible
                : any_obstructed ? ObstructionVerdict::obstructed_non_integral
                                 : ObstructionVerdict::no_obstruction;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct Tuple {
  QSqrt5 delta, phi, psi;
  Quaternion<QSqrt5> h;

  friend Tuple operator*(const Tuple& a, const Tuple& b) {
    return {a.delta * b.delta, a.phi * b.phi, a.psi * b.psi, a.h * b.h};
  }
  Tuple star() const { return {delta, phi, psi, h.conj()}; }
  friend bool operator==(const Tuple& a, const Tuple& b) {
    return a.delta == b.delta && a.phi == b.phi && a.psi == b.psi && a.h == b.h;
  }
};

Tuple scaled(const QSqrt5& s, const Tuple& t) { return {s * t.delta, s * t.phi, s * t.psi, s * t.h}; }

Tuple add(const Tuple& a, const Tuple& b) {
  return {a.delta + b.delta, a.phi + b.phi, a.psi + b.psi, a.h + b.h};
}

Rational q(long long num, long long den = 1) { return Rational(num, den); }

}  // namespace

Rank7Inputs rank7_inputs(bool literal_b3) {
  Rank7Inputs in;
  in.delta = {q(1), q(2), q(2), q(2), q(2), q(2), q(2)};
  in.phi = {q(1), q(-5, 2), q(-5, 2), q(0), q(0), q(2), q(2)};
  in.psi = {q(1), q(2), q(2), q(-9, 2), q(-9, 2), q(2), q(2)};
  in.multiplicities = {q(1), q(52, 45), q(4, 9), q(26, 5)};
  const QSqrt5 half_root5(q(0), q(1, 2));
  const QSqrt5 zero;
  const Quaternion<QSqrt5> x1{zero, half_root5, zero, zero};
  const Quaternion<QSqrt5> x2{zero, zero, half_root5, zero};
  const Quaternion<QSqrt5> x3{QSqrt5(literal_b3 ? q(1, 2) : q(-1, 2)), zero, zero, half_root5};
  in.images = {Quaternion<QSqrt5>::real(QSqrt5(1)), x1, x1.conj(), x2, x2.conj(), x3, x3.conj()};
  return in;
}

ExactConstruction construct_from_embedding(const Rank7Inputs& in) {
  constexpr std::size_t r = 7;
  ExactConstruction out;
  out.star = {0, 2, 1, 4, 3, 6, 5};
  std::vector<Tuple> basis;
  for (std::size_t i = 0; i < r; ++i) {
    basis.push_back({QSqrt5(in.delta[i]), QSqrt5(in.phi[i]), QSqrt5(in.psi[i]), in.images[i]});
    out.delta.emplace_back(in.delta[i]);
  }
  const auto& m = in.multiplicities;
  auto tau = [&](const Tuple& t) {
    return QSqrt5(m[0]) * t.delta + QSqrt5(m[1]) * t.phi + QSqrt5(m[2]) * t.psi +
           QSqrt5(m[3]) * t.h.reduced_trace();
  };
  QSqrt5 n;
  for (const auto& d : out.delta) n += d;

  out.tau_consistent = true;
  for (std::size_t k = 0; k < r; ++k) {
    out.tau.push_back(tau(basis[k]));
    out.tau_consistent = out.tau_consistent && out.tau.back() == (k == 0 ? n : QSqrt5());
  }

  // Gram matrix G_kl = tau(b_k b_l*); for a standard basis it is diag(n delta_k).
  std::vector<QSqrt5> gram_diag(r);
  out.gram_diagonal = true;
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      const QSqrt5 g = tau(basis[k] * basis[l].star());
      if (k == l) {
        gram_diag[k] = g;
        out.gram_diagonal = out.gram_diagonal && g.sign() > 0;
      } else {
        out.gram_diagonal = out.gram_diagonal && g == QSqrt5();
      }
    }
  if (!out.gram_diagonal) return out;

  out.lambda.resize(r * r * r);
  out.reconstruction_exact = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Tuple prod = basis[i] * basis[j];
      Tuple rebuilt = scaled(QSqrt5(), basis[0]);
      for (std::size_t k = 0; k < r; ++k) {
        const QSqrt5 coeff = tau(prod * basis[k].star()) / gram_diag[k];
        out.lambda[(i * r + j) * r + k] = coeff;
        rebuilt = add(rebuilt, scaled(coeff, basis[k]));
      }
      out.reconstruction_exact = out.reconstruction_exact && rebuilt == prod;
    }
  return out;
}

ExactAxiomReport verify_exact(const ExactConstruction& c) {
  ExactAxiomReport rep;
  const std::size_t r = c.star.size();
  if (c.lambda.size() != r * r * r) return rep;
  auto lam = [&](std::size_t i, std::size_t j, std::size_t k) -> const QSqrt5& {
    return c.lambda[(i * r + j) * r + k];
  };
  const auto& s = c.star;

  rep.all_rational = std::all_of(c.lambda.begin(), c.lambda.end(), [](const auto& v) { return v.is_rational(); });

  rep.identity = true;
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k) {
      const QSqrt5 want(j == k ? 1 : 0);
      rep.identity = rep.identity && lam(0, j, k) == want && lam(j, 0, k) == want;
    }

  rep.anti_automorphism = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        rep.anti_automorphism = rep.anti_automorphism && lam(i, j, k) == lam(s[j], s[i], s[k]);

  rep.pseudo_inverse = true;
  rep.standard = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (j == s[i]) {
        rep.pseudo_inverse = rep.pseudo_inverse && lam(i, j, 0).sign() > 0 && lam(i, j, 0) == lam(j, i, 0);
        rep.standard = rep.standard && lam(i, j, 0) == c.delta[i];
      } else {
        rep.pseudo_inverse = rep.pseudo_inverse && lam(i, j, 0) == QSqrt5();
      }
    }

  rep.associativity = true;
  for (std::size_t i = 0; i < r && rep.associativity; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) {
          QSqrt5 lhs, rhs;
          for (std::size_t m = 0; m < r; ++m) {
            lhs += lam(i, j, m) * lam(m, k, l);
            rhs += lam(j, k, m) * lam(i, m, l);
          }
          rep.associativity = rep.associativity && lhs == rhs;
        }

  rep.degree_homomorphism = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      QSqrt5 sum;
      for (std::size_t k = 0; k < r; ++k) sum += lam(i, j, k) * c.delta[k];
      rep.degree_homomorphism = rep.degree_homomorphism && sum == c.delta[i] * c.delta[j];
    }
  return rep;
}

Rba build_rank7_example() {
  const ExactConstruction c = construct_from_embedding(rank7_inputs());
  if (!c.tau_consistent || !c.gram_diagonal || !c.reconstruction_exact) {
    throw Error(ErrorCode::contract_violation, "rank-7 embedding is inconsistent with its character table");
  }
  if (!verify_exact(c).ok()) throw Error(ErrorCode::contract_violation, "rank-7 construction fails an RBA axiom");
  std::vector<Scalar> lam;
  lam.reserve(c.lambda.size());
  for (const auto& v : c.lambda) lam.emplace_back(v.to_double());
  return Rba(7, std::move(lam), c.star, {"b0", "b1", "b1*", "b2", "b2*", "b3", "b3*"});
}

std::vector<Quaternion<double>> rank7_quaternion_images() {
  std::vector<Quaternion<double>> out;
  for (const auto& h : rank7_inputs().images) {
    out.push_back({h.t.to_double(), h.x.to_double(), h.y.to_double(), h.z.to_double()});
  }
  return out;
}

}  // namespace rba
