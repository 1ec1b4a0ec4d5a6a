#include "doctest.h"

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rba/error.hpp"
#include "rba/ingest.hpp"
#include "rba/integrality.hpp"
#include "rba/rba.hpp"
#include "rba/rba_io.hpp"

using namespace rba;

namespace {

const ToleranceConfig kTol{};

Rba s3() { return read_rba_file(oracle::fixture("s3.rba")); }

/// b_i -> s_i b_i with s_i = s_{i*}: lambda'(i,j,k) = s_i s_j / s_k lambda(i,j,k).
Rba rescaled(const Rba& a, const std::vector<Rational>& s) {
  const std::size_t r = a.rank();
  std::vector<Scalar> lam;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) lam.push_back(a.lambda(i, j, k) * Scalar(Rational(s[i] * s[j] / s[k])));
  return Rba(r, lam, a.star_map());
}

}  // namespace

TEST_CASE("scalar parsing and arithmetic") {
  const Scalar half = Scalar::parse("3/6");
  CHECK(half.is_exact());
  CHECK(half.exact() == Rational(1, 2));
  CHECK(Scalar::parse("-7").exact() == -7);
  CHECK_FALSE(Scalar::parse("0.5").is_exact());
  CHECK_FALSE(Scalar::parse("1e-3").is_exact());
  CHECK((half + Scalar(Rational(1, 3))).exact() == Rational(5, 6));
  CHECK_FALSE((half + Scalar(0.25)).is_exact());
  CHECK((half * Scalar(0.5)).to_double() == doctest::Approx(0.25));
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse("abc"), Error);
  CHECK(Scalar::parse("-5/2").to_string() == "-5/2");
}

TEST_CASE("snap and valuation helpers") {
  CHECK(snap_rational(1.0 / 3.0, 1e-12).value() == Rational(1, 3));
  CHECK(snap_rational(52.0 / 45.0, 1e-12).value() == Rational(52, 45));
  CHECK_FALSE(snap_rational(std::sqrt(5.0), 1e-14).has_value());
  CHECK(padic_valuation(Rational(-5, 2), 2) == -1);
  CHECK(padic_valuation(Rational(-9, 2), 2) == -1);
  CHECK(padic_valuation(Rational(12), 2) == 2);
  CHECK(padic_valuation(Rational(12), 3) == 1);
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("tolerance config invariants") {
  ToleranceConfig t;
  CHECK_NOTHROW(t.check());
  t.eps_zero = 1e-3;
  CHECK_THROWS_AS(t.check(), Error);
  t = {};
  t.eps_residual = 0.0;
  CHECK_THROWS_AS(t.check(), Error);
}

TEST_CASE("structural errors are distinct from axiom failures") {
  try {
    Rba(2, std::vector<Scalar>(7, Scalar(0)), {0, 1});
    FAIL("expected structural error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::structural);
  }
  CHECK_THROWS_AS(Rba(2, std::vector<Scalar>(8, Scalar(0)), {0, 0}), Error);
  // A well-shaped but invalid tensor constructs fine and fails validation.
  const Rba zero(2, std::vector<Scalar>(8, Scalar(0)), {0, 1});
  CHECK_FALSE(validate(zero, kTol).ok());
}

TEST_CASE("rank-1 trivial algebra") {
  const Rba one = read_rba_file(oracle::fixture("rank1.rba"));
  CHECK(validate(one, kTol).ok());
  const DegreeMap dm = degree_map(one, kTol);
  CHECK(dm.values.size() == 1);
  CHECK(dm.order.exact() == 1);
  CHECK(gram_matrix(one, dm, kTol)(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("S3 validates and matches a direct Cayley check") {
  const Rba a = s3();
  const ValidationReport v = validate(a, kTol);
  CHECK(v.ok());
  for (const auto& c : v.checks) CHECK(c.max_residual == 0.0);

  const CayleyTable t = read_cayley_file(oracle::fixture("s3.cayley"));
  REQUIRE(oracle::is_group(t.table));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::size_t k = 0; k < 6; ++k) CHECK(a.lambda(i, j, k).exact() == (t.table[i][j] == k ? 1 : 0));
      if (t.table[i][j] == 0) CHECK(a.star(i) == j);
    }
}

TEST_CASE("zeroing lambda(1,1*,0) breaks the pseudo-inverse check at (1,1*)") {
  const Rba broken = read_rba_file(oracle::fixture("invalid/s3_broken.rba"));
  const ValidationReport v = validate(broken, kTol);
  CHECK_FALSE(v.ok());
  CHECK_FALSE(v.check("pseudo_inverse").passed);
  CHECK(v.check("pseudo_inverse").detail == "(1,1*)");
  CHECK(v.check("star_involution").passed);
}

TEST_CASE("degree maps") {
  const DegreeMap d = degree_map(s3(), kTol);
  CHECK(d.order.exact() == 6);
  for (const auto& v : d.values) CHECK(v.exact() == 1);

  const Rba r7 = build_rank7_example();
  const DegreeMap d7 = degree_map(r7, kTol);
  const double want[] = {1, 2, 2, 2, 2, 2, 2};
  for (std::size_t i = 0; i < 7; ++i) CHECK(d7[i] == doctest::Approx(want[i]).epsilon(1e-10));
  CHECK(d7.order.to_double() == doctest::Approx(13.0).epsilon(1e-10));
  // homomorphism, checked directly on the tensor
  double worst = 0.0;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 7; ++k) sum += r7.lambda_d(i, j, k) * want[k];
      worst = std::max(worst, std::abs(sum - want[i] * want[j]));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("standardize recovers a rescaled basis") {
  const Rba a = s3();
  const DegreeMap d = degree_map(a, kTol);
  CHECK(is_standard(a, d, kTol));
  CHECK(standardize(a, d).first.tensor() == a.tensor());

  const Rba b = rescaled(a, {1, 3, 3, 1, 1, 1});
  CHECK(validate(b, kTol).ok());
  CHECK(b.lambda(1, 2, 0).exact() == 9);
  const DegreeMap db = degree_map(b, kTol);
  CHECK(db.values[1].exact() == 3);
  CHECK_FALSE(is_standard(b, db, kTol));
  const auto [c, dc] = standardize(b, db);
  CHECK(c.tensor() == a.tensor());
  CHECK(dc.order.exact() == 6);
  const auto [c2, dc2] = standardize(c, dc);
  CHECK(c2.tensor() == c.tensor());
}

TEST_CASE("standardize round trip over random star-compatible rescalings") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(1, 9);
  const Rba d8 = read_rba_file(oracle::fixture("d8.rba"));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> s(8);
    for (std::size_t i = 0; i < 8; ++i) {
      if (d8.star(i) < i) {
        s[i] = s[d8.star(i)];
      } else {
        s[i] = i == 0 ? Rational(1) : Rational(num(rng), num(rng));
      }
    }
    const Rba b = rescaled(d8, s);
    REQUIRE(validate(b, kTol).ok());
    const DegreeMap db = degree_map(b, kTol);
    const auto [c, dc] = standardize(b, db);
    CHECK(c.tensor() == d8.tensor());
    CHECK(degree_map(c, kTol).values == dc.values);
  }
}

TEST_CASE("gram matrix of a standard basis is diag(n delta)") {
  const Rba a = s3();
  const Eigen::MatrixXd g = gram_matrix(a, degree_map(a, kTol), kTol);
  CHECK((g - 6.0 * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);

  const Rba r7 = build_rank7_example();
  const Eigen::MatrixXd g7 = gram_matrix(r7, degree_map(r7, kTol), kTol);
  Eigen::VectorXd want(7);
  want << 13, 26, 26, 26, 26, 26, 26;
  CHECK((g7 - Eigen::MatrixXd(want.asDiagonal())).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("feasible trace") {
  const Rba a = s3();
  const DegreeMap d = degree_map(a, kTol);
  std::vector<Scalar> e0(6, Scalar(0));
  e0[0] = Scalar(1);
  CHECK(feasible_trace(d, e0).exact() == 6);
  std::vector<Scalar> e3(6, Scalar(0));
  e3[3] = Scalar(1);
  CHECK(feasible_trace(d, e3).exact() == 0);
}

TEST_CASE("rba text format") {
  const Rba a = s3();
  const Rba back = parse_rba(format_rba(a, "round trip"));
  CHECK(back.tensor() == a.tensor());
  CHECK(back.star_map() == a.star_map());
  CHECK(back.is_exact());

  const Rba f = parse_rba("rank 2\nstar 0 1\nlambda 0 0 0 1\nlambda 0 1 1 1\nlambda 1 0 1 1\nlambda 1 1 0 1.0\n");
  CHECK_FALSE(f.is_exact());
  CHECK(validate(f, kTol).ok());
  CHECK(parse_rba(format_rba(f)).dense() == f.dense());

  auto parse_error_line = [](const std::string& text) {
    try {
      parse_rba(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(parse_error_line("rank 2\nstar 0 1\nlambda 0 0 x 1\n").find("line 3") != std::string::npos);
  CHECK(parse_error_line("rank 2\nstar 0 1\nlambda 0 0 0 1\nlambda 0 0 0 1\n").find("line 4") != std::string::npos);
  CHECK(parse_error_line("rank 2\nstar 0 1\nlambda 0 0 2 1\n").find("line 3") != std::string::npos);
  CHECK_FALSE(parse_error_line("star 0\n").empty());
}
