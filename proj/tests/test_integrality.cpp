#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "rba/error.hpp"
#include "rba/integrality.hpp"
#include "rba/rba_io.hpp"

using namespace rba;

namespace {

const ToleranceConfig kTol{};

Rational q(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("integral check") {
  const Rba s3 = read_rba_file(oracle::fixture("s3.rba"));
  const IntegralityReport ok = integral_check(s3, kTol);
  CHECK(ok.integral);
  CHECK(ok.offending.empty());

  // b3 -> b3 / 2 in S3
  std::vector<Rational> s{1, 1, 1, q(1, 2), 1, 1};
  std::vector<Scalar> lam;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) lam.push_back(s3.lambda(i, j, k) * Scalar(Rational(s[i] * s[j] / s[k])));
  const Rba half(6, lam, s3.star_map());
  REQUIRE(validate(half, kTol).ok());
  const IntegralityReport bad = integral_check(half, kTol);
  CHECK_FALSE(bad.integral);
  for (const auto& e : bad.offending) CHECK(boost::multiprecision::denominator(e.value.exact()) != 1);

  const IntegralityReport r7 = integral_check(build_rank7_example(), kTol);
  CHECK_FALSE(r7.integral);
  bool found = false;
  for (const auto& e : r7.offending) found = found || (e.i == 1 && e.j == 1 && e.k == 1);
  CHECK(found);  // lambda(1,1,1) = -1/4
}

TEST_CASE("two-adic rows from the published table") {
  const TwoAdicRow phi = two_adic_row(q(-5, 2), 0, 2);
  CHECK(phi.relation_holds);
  CHECK(phi.phi3_formula == 2);
  CHECK(phi.valuations[0] == -1);
  CHECK_FALSE(phi.valuations[1].has_value());
  CHECK(phi.valuations[2] == 1);
  CHECK(phi.verdict == ObstructionVerdict::obstructed_non_integral);

  const TwoAdicRow psi = two_adic_row(2, q(-9, 2), 2);
  CHECK(psi.relation_holds);
  CHECK(psi.phi3_formula == 2);
  CHECK(psi.valuations[1] == -1);
  CHECK(psi.verdict == ObstructionVerdict::obstructed_non_integral);

  const TwoAdicRow broken = two_adic_row(1, 1, 1);
  CHECK_FALSE(broken.relation_holds);
  CHECK(broken.verdict == ObstructionVerdict::inadmissible);
}

TEST_CASE("no integer class-1 row exists") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> u(-1'000'000, 1'000'000);
  for (int trial = 0; trial < 10'000; ++trial) {
    const long long a = u(rng), b = u(rng), c = u(rng);
    CHECK_FALSE(integer_class1_row_exists(a, b, c));
    // the relation forces phi3 = -(1 + 2a + 2b)/2, which has 2-adic valuation -1
    const TwoAdicRow row = two_adic_row(a, b, Rational(-(1 + 2 * a + 2 * b), 2));
    CHECK(row.relation_holds);
    CHECK(row.valuations[2] == -1);
    CHECK(row.verdict == ObstructionVerdict::obstructed_non_integral);
  }
}

TEST_CASE("two-adic obstruction on the rank-7 example") {
  const Rba r7 = build_rank7_example();
  const Decomposition d = decompose(r7, kTol);
  const TwoAdicReport rep = two_adic_obstruction(r7, d.table, kTol);
  CHECK(rep.verdict == ObstructionVerdict::obstructed_non_integral);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].phi1 == q(-5, 2));
  CHECK(rep.rows[0].phi2 == 0);
  CHECK(rep.rows[0].phi3 == 2);
  CHECK(rep.rows[1].phi2 == q(-9, 2));
  for (const auto& row : rep.rows) CHECK(row.phi3_formula == row.phi3);

  const Rba s3 = read_rba_file(oracle::fixture("s3.rba"));
  CHECK_THROWS_AS(two_adic_obstruction(s3, decompose(s3, kTol).table, kTol), Error);
}

TEST_CASE("trace of b1 b1* by hand") {
  // (delta, phi, psi, X)(b1) = (2, -5/2, 2, (sqrt5/2) i); X(b1) X(b1)* = 5/4.
  const Rational tau = q(1) * 4 + q(52, 45) * q(25, 4) + q(4, 9) * 4 + q(26, 5) * 2 * q(5, 4);
  CHECK(tau == 26);
  CHECK(tau / 13 == 2);
}

TEST_CASE("exact reconstruction from the embedding") {
  const ExactConstruction c = construct_from_embedding(rank7_inputs());
  CHECK(c.tau_consistent);
  CHECK(c.gram_diagonal);
  CHECK(c.reconstruction_exact);
  const ExactAxiomReport ax = verify_exact(c);
  CHECK(ax.identity);
  CHECK(ax.anti_automorphism);
  CHECK(ax.pseudo_inverse);
  CHECK(ax.associativity);
  CHECK(ax.degree_homomorphism);
  CHECK(ax.standard);
  CHECK_FALSE(ax.all_rational);

  auto lam = [&](std::size_t i, std::size_t j, std::size_t k) { return c.lambda[(i * 7 + j) * 7 + k]; };
  CHECK(lam(1, 2, 0) == QSqrt5(2));
  const std::vector<Rational> b1b1{0, q(-1, 4), q(-1, 4), 0, 0, q(5, 4), q(5, 4)};
  for (std::size_t k = 0; k < 7; ++k) CHECK(lam(1, 1, k) == QSqrt5(b1b1[k]));
  CHECK(lam(1, 3, 5) == QSqrt5(0, q(1, 4)));
  CHECK(lam(1, 3, 6) == QSqrt5(0, q(-1, 4)));
  CHECK(lam(5, 5, 5) == QSqrt5(q(1, 2)));
  CHECK(lam(5, 5, 6) == QSqrt5(q(3, 2)));

  // the float tensor carries the same values
  const Rba r7 = build_rank7_example();
  double worst = 0.0;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      for (std::size_t k = 0; k < 7; ++k) worst = std::max(worst, std::abs(r7.lambda_d(i, j, k) - lam(i, j, k).to_double()));
  CHECK(worst < 1e-15);
  CHECK(validate(r7, kTol).ok());
}

TEST_CASE("the printed sign of X(b3) is inconsistent with the table") {
  const ExactConstruction c = construct_from_embedding(rank7_inputs(true));
  CHECK_FALSE(c.tau_consistent);
  CHECK(c.tau[5] == QSqrt5(q(52, 5)));
  CHECK(construct_from_embedding(rank7_inputs()).tau[5] == QSqrt5(0));
}

TEST_CASE("reduced characteristic polynomial of X(b3)") {
  const auto h = rank7_inputs().images[5];
  // t^2 - trd(h) t + nrd(h)
  CHECK(-h.reduced_trace() == QSqrt5(1));
  CHECK(h.norm() == QSqrt5(q(3, 2)));
  // its square is the characteristic polynomial of left multiplication
  const auto x = rank7_quaternion_images()[5];
  const auto cp = characteristic_polynomial(left_multiplication_matrix(x));
  const double want[] = {1, 2, 4, 3, 2.25};
  for (std::size_t i = 0; i < 5; ++i) CHECK(cp[i] == doctest::Approx(want[i]));
}

TEST_CASE("quadratic field arithmetic") {
  const QSqrt5 r = QSqrt5::sqrt_d();
  CHECK(r * r == QSqrt5(5));
  CHECK((QSqrt5(1) + r) * (QSqrt5(1) - r) == QSqrt5(-4));
  CHECK((QSqrt5(3) / r) * r == QSqrt5(3));
  CHECK(QSqrt5(2, -1).sign() == -1);  // 2 - sqrt5 < 0
  CHECK(QSqrt5(3, -1).sign() == 1);
  CHECK(QSqrt5(q(-1, 2), q(1, 2)).sign() == 1);
  CHECK_THROWS_AS(QSqrt5(1) / QSqrt5(0), Error);
}
