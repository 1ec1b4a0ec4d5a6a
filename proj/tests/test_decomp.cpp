#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "rba/decomp.hpp"
#include "rba/error.hpp"
#include "rba/integrality.hpp"
#include "rba/rba_io.hpp"

using namespace rba;

namespace {

const ToleranceConfig kTol{};

Rba load(const std::string& name) { return read_rba_file(oracle::fixture(name)); }

std::vector<std::vector<double>> real_rows(const CharacterTable& t) {
  std::vector<std::vector<double>> out;
  for (const auto& row : t.rows) {
    std::vector<double> v;
    for (Eigen::Index i = 0; i < row.values.size(); ++i) v.push_back(row.values[i].real());
    out.push_back(v);
  }
  return out;
}

double max_imag(const CharacterTable& t) {
  double m = 0.0;
  for (const auto& row : t.rows) m = std::max(m, row.values.imag().cwiseAbs().maxCoeff());
  return m;
}

std::vector<Eigen::MatrixXd> dynamic(const std::vector<Eigen::Matrix2d>& v) {
  return {v.begin(), v.end()};
}

double star_residual(const std::vector<Eigen::MatrixXd>& x, const Rba& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rank(); ++i)
    worst = std::max(worst, (x[a.star(i)] - x[i].transpose()).cwiseAbs().maxCoeff());
  return worst;
}

double hom_residual(const std::vector<Eigen::MatrixXd>& x, const Rba& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) {
      Eigen::MatrixXd d = x[i] * x[j];
      for (std::size_t k = 0; k < a.rank(); ++k) d -= a.lambda_d(i, j, k) * x[k];
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace

TEST_CASE("regular representation entries") {
  const Rba a = load("s3.rba");
  const RegularRep reg = regular_rep(a);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) CHECK(reg.left[i](k, j) == a.lambda_d(i, j, k));
  CHECK(regular_rep_residual(a, reg) == 0.0);
}

TEST_CASE("center dimension equals the number of irreducible characters") {
  const std::vector<std::pair<std::string, long>> cases{
      {"rank1.rba", 1}, {"c2.rba", 2}, {"c3.rba", 3}, {"s3.rba", 3}, {"d8.rba", 5}, {"q8.rba", 5}};
  for (const auto& [name, dim] : cases) {
    CAPTURE(name);
    CHECK(center_basis(load(name), kTol).cols() == dim);
  }
  CHECK(center_basis(build_rank7_example(), kTol).cols() == 4);
}

TEST_CASE("central idempotent identities on every fixture") {
  std::vector<Rba> algebras;
  for (const char* name : {"rank1.rba", "c2.rba", "c3.rba", "s3.rba", "d8.rba", "q8.rba"}) algebras.push_back(load(name));
  algebras.push_back(build_rank7_example());
  for (const auto& a : algebras) {
    CAPTURE(a.rank());
    const auto e = central_idempotents(a, kTol);
    const IdempotentResiduals res = idempotent_residuals(a, e);
    CHECK(res.sum_to_identity < 1e-9);
    CHECK(res.idempotence < 1e-9);
    CHECK(res.orthogonality < 1e-9);
    long squares = 0;
    for (const auto& x : e) squares += x.block_dim * x.block_dim;
    CHECK(squares == static_cast<long>(a.rank()));
  }
}

TEST_CASE("character tables agree with the classical tables") {
  const Decomposition s3 = decompose(load("s3.rba"), kTol);
  CHECK(oracle::table_distance(real_rows(s3.table), oracle::s3_characters()) < 1e-9);
  CHECK(max_imag(s3.table) < 1e-9);
  const Decomposition d8 = decompose(load("d8.rba"), kTol);
  CHECK(oracle::table_distance(real_rows(d8.table), oracle::d8_characters()) < 1e-9);
  const Decomposition q8 = decompose(load("q8.rba"), kTol);
  CHECK(oracle::table_distance(real_rows(q8.table), oracle::q8_characters()) < 1e-9);

  // C3: the nontrivial characters take the values 1, w, w^2 with w = exp(2 pi i / 3).
  const Decomposition c3 = decompose(load("c3.rba"), kTol);
  REQUIRE(c3.table.size() == 3);
  const std::complex<double> w = std::polar(1.0, 2.0 * M_PI / 3.0);
  int found = 0;
  for (std::size_t c = 1; c < 3; ++c) {
    const auto& v = c3.table[c].values;
    for (const auto& z : {w, std::conj(w)}) {
      if (std::abs(v[0] - 1.0) < 1e-9 && std::abs(v[1] - z) < 1e-9 && std::abs(v[2] - z * z) < 1e-9) ++found;
    }
    CHECK_FALSE(c3.table[c].is_real_valued(1e-9));
  }
  CHECK(found == 2);
}

TEST_CASE("degree map comes first and multiplicities are group degrees") {
  const Decomposition d = decompose(load("s3.rba"), kTol);
  CHECK(d.table.is_exact());
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(d.table[0].values[i].real() == doctest::Approx(1.0));
  for (const auto& row : d.table.rows) {
    // for a group algebra m_psi = psi(1)
    CHECK(row.exact_multiplicity.value() == row.degree);
    CHECK(std::abs(row.multiplicity - row.multiplicity_solve) < 1e-8);
  }
}

TEST_CASE("orthogonality sums after snapping") {
  for (const char* name : {"c2.rba", "s3.rba", "d8.rba", "q8.rba"}) {
    CAPTURE(name);
    const Rba a = load(name);
    const Decomposition d = decompose(a, kTol);
    long squares = 0;
    Rational mn = 0;
    for (const auto& row : d.table.rows) {
      squares += row.degree * row.degree;
      mn += row.exact_multiplicity.value() * row.degree;
    }
    CHECK(squares == static_cast<long>(a.rank()));
    CHECK(mn == d.degrees.order.exact());
    for (std::size_t c = 1; c < d.table.size(); ++c) {
      Rational sum = 0;
      for (const auto& v : d.table[c].exact_values) sum += v.value();
      CHECK(sum == 0);
    }
    CHECK(d.table.multiplicity_route_gap < 1e-8);
  }
}

TEST_CASE("rank-7 table reproduces the published values") {
  const Decomposition d = decompose(build_rank7_example(), kTol);
  REQUIRE(d.table.size() == 4);
  const auto want = oracle::rank7_table();
  for (std::size_t c = 0; c < 4; ++c) {
    CAPTURE(c);
    CHECK(d.table[c].degree == (c == 3 ? 2 : 1));
    for (std::size_t i = 0; i < 7; ++i) {
      const double v = double(want[c].values[i][0]) / double(want[c].values[i][1]);
      CHECK(std::abs(d.table[c].values[static_cast<Eigen::Index>(i)] - v) < 1e-8);
    }
    const double m = double(want[c].multiplicity[0]) / double(want[c].multiplicity[1]);
    CHECK(std::abs(d.table[c].multiplicity - m) < 1e-8);
    CHECK(std::abs(d.table[c].multiplicity_solve - m) < 1e-8);
    CHECK(std::abs(d.table[c].values.sum() - (c == 0 ? 13.0 : 0.0)) < 1e-8);
  }
}

TEST_CASE("star representation extraction") {
  for (const char* name : {"s3.rba", "d8.rba"}) {
    CAPTURE(name);
    const Rba a = load(name);
    const Decomposition d = decompose(a, kTol);
    for (const auto& chi : d.table.rows) {
      const StarRep rep = star_rep_extract(a, d.degrees, chi, kTol);
      CHECK(rep.dim == static_cast<std::size_t>(chi.degree));
      const StarRepResiduals res = check_star_rep(rep, a);
      CHECK(res.identity < 1e-9);
      CHECK(res.homomorphism < 1e-9);
      CHECK(res.star < 1e-9);
      // independent recomputation
      CHECK(hom_residual(rep.images, a) < 1e-9);
      CHECK(star_residual(rep.images, a) < 1e-9);
      for (std::size_t i = 0; i < a.rank(); ++i)
        CHECK(std::abs(rep[i].trace() - chi.values[static_cast<Eigen::Index>(i)].real()) < 1e-9);
    }
  }
}

TEST_CASE("extraction fails for a quaternionic component") {
  const Rba q8 = load("q8.rba");
  const Decomposition d = decompose(q8, kTol);
  const Character& chi = d.table.rows.back();
  REQUIRE(chi.degree == 2);
  try {
    star_rep_extract(q8, d.degrees, chi, kTol);
    FAIL("extraction should fail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::extraction_failed);
  }
}

TEST_CASE("the plane representation of S3 is a *-representation") {
  const Rba a = load("s3.rba");
  const auto x = dynamic(oracle::s3_plane_rep());
  CHECK(hom_residual(x, a) < 1e-12);
  CHECK(star_residual(x, a) < 1e-12);
  StarRep rep{2, x};
  const StarRepResiduals res = check_star_rep(rep, a);
  CHECK(res.homomorphism < 1e-12);
  CHECK(res.star < 1e-12);
}

TEST_CASE("symmetrize restores X(b*) = X(b)^T after random conjugation") {
  const Rba s3 = load("s3.rba");
  const Rba d8 = load("d8.rba");
  const DegreeMap ds3 = decompose(s3, kTol).degrees;
  const DegreeMap dd8 = decompose(d8, kTol).degrees;

  // Known *-representations of dimensions 1, 2 and 3.
  std::vector<Eigen::MatrixXd> sign, plane = dynamic(oracle::s3_plane_rep()), perm;
  for (std::size_t g = 0; g < 6; ++g) {
    sign.push_back(Eigen::MatrixXd::Constant(1, 1, g < 3 ? 1.0 : -1.0));
    // permutation action on the three unit vectors at angles 0, 120, 240 degrees
    Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
    const auto x = oracle::s3_plane_rep()[g];
    const double ang[3] = {0.0, 2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0};
    for (int c = 0; c < 3; ++c) {
      const Eigen::Vector2d v(std::cos(ang[c]), std::sin(ang[c]));
      const Eigen::Vector2d w = x * v;
      for (int r = 0; r < 3; ++r)
        if ((w - Eigen::Vector2d(std::cos(ang[r]), std::sin(ang[r]))).norm() < 1e-9) p(r, c) = 1.0;
    }
    perm.push_back(p);
  }
  std::vector<Eigen::MatrixXd> d8_plane;
  for (int f = 0; f < 2; ++f)
    for (int k = 0; k < 4; ++k) {
      Eigen::Matrix2d r, s;
      r << 0, -1, 1, 0;
      s << 1, 0, 0, -1;
      Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
      if (f) m = s;
      for (int i = 0; i < k; ++i) m = m * r;
      d8_plane.push_back(m);
    }

  struct Case {
    const Rba* a;
    const DegreeMap* dm;
    std::vector<Eigen::MatrixXd> x;
  };
  std::vector<Case> cases{{&s3, &ds3, sign}, {&s3, &ds3, plane}, {&s3, &ds3, perm}, {&d8, &dd8, d8_plane}};
  for (const auto& c : cases) {
    REQUIRE(hom_residual(c.x, *c.a) < 1e-12);
    REQUIRE(star_residual(c.x, *c.a) < 1e-12);
  }

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_star = 0.0, worst_hom = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Case& c = cases[static_cast<std::size_t>(trial) % cases.size()];
    const auto dim = c.x[0].rows();
    Eigen::MatrixXd p(dim, dim);
    do {
      for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) p(i, j) = u(rng) + (i == j ? 1.5 : 0.0);
    } while (std::abs(p.determinant()) < 0.1);
    const Eigen::MatrixXd pinv = p.inverse();
    std::vector<Eigen::MatrixXd> phi;
    for (const auto& x : c.x) phi.push_back(p * x * pinv);

    const SymmetrizeResult s = symmetrize(*c.a, *c.dm, phi, kTol);
    CHECK(s.asymmetry < 1e-10);
    CHECK(s.min_eigenvalue > 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.averaged);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    worst_star = std::max(worst_star, star_residual(s.rep.images, *c.a));
    worst_hom = std::max(worst_hom, hom_residual(s.rep.images, *c.a));
    for (std::size_t i = 0; i < c.x.size(); ++i)
      CHECK(std::abs(s.rep[i].trace() - c.x[i].trace()) < 1e-9);
  }
  CHECK(worst_star < 1e-8);
  CHECK(worst_hom < 1e-8);
}

TEST_CASE("symmetrize rejects a non-representation") {
  const Rba s3 = load("s3.rba");
  const DegreeMap d = decompose(s3, kTol).degrees;
  std::vector<Eigen::MatrixXd> bad(6, Eigen::MatrixXd::Identity(2, 2));
  bad[1] *= 2.0;
  CHECK_THROWS_AS(symmetrize(s3, d, bad, kTol), Error);
}

TEST_CASE("characteristic polynomial") {
  Eigen::MatrixXd x(2, 2);
  x << 1, 2, 3, 4;  // t^2 - 5t - 2
  const auto c = characteristic_polynomial(x);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(-5.0));
  CHECK(c[2] == doctest::Approx(-2.0));

  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(3, 3);
  y.diagonal() << 1, 2, 3;  // (t-1)(t-2)(t-3)
  const auto cy = characteristic_polynomial(y);
  CHECK(cy[1] == doctest::Approx(-6.0));
  CHECK(cy[2] == doctest::Approx(11.0));
  CHECK(cy[3] == doctest::Approx(-6.0));
}

TEST_CASE("rational characters have rational characteristic polynomials") {
  const Rba a = load("s3.rba");
  const Decomposition d = decompose(a, kTol);
  const StarRep rep = star_rep_extract(a, d.degrees, d.table.rows.back(), kTol);
  const CharpolyReport cp = charpoly_check(rep, a, d.table.rows.back(), kTol);
  CHECK(cp.certified_rational);
  CHECK(cp.all_rational);
  CHECK_FALSE(cp.lemma_violation);
  // X(r) has order 3: t^2 + t + 1
  CHECK(cp.entries[1].snapped[1].value() == 1);
  CHECK(cp.entries[1].snapped[2].value() == 1);
}
