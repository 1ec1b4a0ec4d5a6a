// Independent reference computations used only by the tests. Nothing here
// calls into the library's algorithms; inputs and outputs are plain numbers.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#ifndef RBA_FIXTURES_DIR
#error "RBA_FIXTURES_DIR must be defined"
#endif

namespace oracle {

inline std::string fixture(const std::string& name) { return std::string(RBA_FIXTURES_DIR) + "/" + name; }

// ---------------------------------------------------------------------------
// Local solvability of z^2 = a x^2 + b y^2 by exhaustive search mod p^k.

inline std::int64_t mod(__int128 v, std::int64_t m) {
  const auto r = static_cast<std::int64_t>(v % m);
  return r < 0 ? r + m : r;
}

inline int valuation(__int128 v, std::int64_t p) {
  if (v == 0) return 1 << 20;
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

/// Strips even powers of p so that v_p(x) is 0 or 1.
inline std::int64_t square_reduce(std::int64_t x, std::int64_t p) {
  while (x % (p * p) == 0) x /= p * p;
  return x;
}

/// Hilbert symbol (a, b)_p for nonzero integers a, b; p == 0 is the real place.
/// A primitive solution mod p^k is accepted only when some partial derivative
/// has valuation m with 2m + 1 <= k, so that it lifts to Z_p.
inline int hilbert_brute(std::int64_t a, std::int64_t b, std::int64_t p) {
  if (p == 0) return (a > 0 || b > 0) ? 1 : -1;
  a = square_reduce(a, p);
  b = square_reduce(b, p);
  const int k = p == 2 ? 5 : 3;
  std::int64_t pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;

  auto lifts = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    const __int128 f = static_cast<__int128>(z) * z - static_cast<__int128>(a) * x * x -
                       static_cast<__int128>(b) * y * y;
    if (mod(f, pk) != 0) return false;
    const int m = std::min({valuation(static_cast<__int128>(2) * z, p), valuation(static_cast<__int128>(2) * a * x, p),
                            valuation(static_cast<__int128>(2) * b * y, p)});
    return 2 * m + 1 <= k;
  };
  // Primitive vectors up to unit scaling: the first unit coordinate is 1.
  for (std::int64_t x = 0; x < pk; ++x)
    for (std::int64_t y = 0; y < pk; ++y)
      if (lifts(x, y, 1)) return 1;
  for (std::int64_t z = 0; z < pk; z += p)
    for (std::int64_t y = 0; y < pk; ++y)
      if (lifts(1, y, z)) return 1;
  for (std::int64_t z = 0; z < pk; z += p)
    for (std::int64_t x = 0; x < pk; x += p)
      if (lifts(x, 1, z)) return 1;
  return -1;
}

// ---------------------------------------------------------------------------
// Finite groups.

using Table = std::vector<std::vector<std::size_t>>;

/// Group axioms checked directly on a Cayley table with identity 0.
inline bool is_group(const Table& t) {
  const std::size_t m = t.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (t[0][i] != i || t[i][0] != i) return false;
    bool has_inverse = false;
    for (std::size_t j = 0; j < m; ++j) has_inverse = has_inverse || (t[i][j] == 0 && t[j][i] == 0);
    if (!has_inverse) return false;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (t[t[i][j]][k] != t[i][t[j][k]]) return false;
  return true;
}

/// Dihedral group of order 2m, elements r^0..r^{m-1}, s r^0..s r^{m-1}.
inline Table dihedral(std::size_t m) {
  auto decode = [m](std::size_t e) { return std::pair<std::size_t, std::size_t>{e / m, e % m}; };
  auto encode = [m](std::size_t f, std::size_t k) { return f * m + k % m; };
  Table t(2 * m, std::vector<std::size_t>(2 * m));
  for (std::size_t x = 0; x < 2 * m; ++x)
    for (std::size_t y = 0; y < 2 * m; ++y) {
      const auto [f1, k1] = decode(x);
      const auto [f2, k2] = decode(y);
      // (s^f1 r^k1)(s^f2 r^k2) = s^(f1+f2) r^(k2 + (-1)^f2 k1)
      const std::size_t k = f2 ? (k2 + m - k1) : (k1 + k2);
      t[x][y] = encode((f1 + f2) % 2, k);
    }
  return t;
}

/// Classical character tables in the element orders of the bundled fixtures.
inline std::vector<std::vector<double>> s3_characters() {
  return {{1, 1, 1, 1, 1, 1}, {1, 1, 1, -1, -1, -1}, {2, -1, -1, 0, 0, 0}};
}

inline std::vector<std::vector<double>> d8_characters() {
  std::vector<std::vector<double>> out;
  for (int a : {1, -1})
    for (int b : {1, -1}) {
      std::vector<double> row;
      for (int f = 0; f < 2; ++f)
        for (int k = 0; k < 4; ++k) row.push_back(std::pow(a, k) * std::pow(b, f));
      out.push_back(row);
    }
  out.push_back({2, 0, -2, 0, 0, 0, 0, 0});
  return out;
}

/// Q8 in the order 1, -1, i, -i, j, -j, k, -k.
inline std::vector<std::vector<double>> q8_characters() {
  std::vector<std::vector<double>> out;
  for (int a : {1, -1})
    for (int b : {1, -1}) out.push_back({1, 1, double(a), double(a), double(b), double(b), double(a * b), double(a * b)});
  out.push_back({2, -2, 0, 0, 0, 0, 0, 0});
  return out;
}

/// The reflection representation of S3 on the plane: r is rotation by 120
/// degrees, s the reflection in the x-axis; fixture order e, r, r^2, s, sr, sr^2.
inline std::vector<Eigen::Matrix2d> s3_plane_rep() {
  const double c = -0.5, s = std::sqrt(3.0) / 2;
  Eigen::Matrix2d r, f;
  r << c, -s, s, c;
  f << 1, 0, 0, -1;
  const Eigen::Matrix2d e = Eigen::Matrix2d::Identity();
  return {e, r, r * r, f, f * r, f * r * r};
}

// ---------------------------------------------------------------------------
// Quaternions as 2x2 complex matrices: t + x i + y j + z k maps to
// [[t + x i, y + z i], [-y + z i, t - x i]].

using C = std::complex<double>;

inline Eigen::Matrix2cd quaternion_matrix(double t, double x, double y, double z) {
  Eigen::Matrix2cd m;
  m << C(t, x), C(y, z), C(-y, z), C(t, -x);
  return m;
}

inline std::array<double, 4> quaternion_from_matrix(const Eigen::Matrix2cd& m) {
  return {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()};
}

// ---------------------------------------------------------------------------
// The rank-7 character table, basis order b0, b1, b1*, b2, b2*, b3, b3*.

struct Rank7Row {
  std::array<std::array<long, 2>, 7> values;  // numerator, denominator
  std::array<long, 2> multiplicity;
  int nu;
};

inline std::array<Rank7Row, 4> rank7_table() {
  return {{
      {{{{1, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 1}}}, {1, 1}, 1},
      {{{{1, 1}, {-5, 2}, {-5, 2}, {0, 1}, {0, 1}, {2, 1}, {2, 1}}}, {52, 45}, 1},
      {{{{1, 1}, {2, 1}, {2, 1}, {-9, 2}, {-9, 2}, {2, 1}, {2, 1}}}, {4, 9}, 1},
      {{{{2, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {-1, 1}, {-1, 1}}}, {26, 5}, -1},
  }};
}

/// max |a - b| over two equal-shaped tables, rows matched as multisets.
inline double table_distance(std::vector<std::vector<double>> a, std::vector<std::vector<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& row : a) {
    double best = INFINITY;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].size() != row.size()) return INFINITY;
      double d = 0.0;
      for (std::size_t i = 0; i < row.size(); ++i) d = std::max(d, std::abs(row[i] - b[j][i]));
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + static_cast<long>(best_j));
  }
  return worst;
}

}  // namespace oracle
