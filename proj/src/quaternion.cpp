#include "rba/quaternion.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "rba/error.hpp"

namespace rba {

std::string_view to_string(FieldMode m) {
  return m == FieldMode::rational ? "rational" : "real-numeric";
}

std::string_view to_string(SplitVerdict v) {
  switch (v) {
    case SplitVerdict::split: return "split";
    case SplitVerdict::division: return "division";
    case SplitVerdict::real_split_only: return "real-split-only";
  }
  return "unknown";
}

namespace {

double scale_of(const Eigen::Matrix2d& m) { return 1.0 + m.cwiseAbs().maxCoeff(); }

}  // namespace

DcBasis dc_change_of_basis(const Rba& rba) {
  const auto pairs = rba.nonreal_pairs();
  if (pairs.size() != 1) {
    throw Error(ErrorCode::precondition,
                std::to_string(pairs.size()) + " nonreal pairs (the c/d basis needs exactly one)");
  }
  const std::size_t r = rba.rank();
  DcBasis dc;
  dc.pair = pairs.front().first;
  dc.pair_star = pairs.front().second;
  dc.c.assign(r, Scalar(0));
  dc.d.assign(r, Scalar(0));
  dc.c[dc.pair] = Scalar(1);
  dc.c[dc.pair_star] = Scalar(1);
  dc.d[dc.pair] = Scalar(1);
  dc.d[dc.pair_star] = Scalar(-1);
  // Coefficient-level involution: (sum a_i b_i)* = sum a_i b_{i*}.
  for (std::size_t i = 0; i < r; ++i) {
    if (!(dc.c[rba.star(i)] == dc.c[i]) || !(dc.d[rba.star(i)] == -dc.d[i])) {
      throw Error(ErrorCode::contract_violation, "c* = c or d* = -d fails");
    }
  }
  return dc;
}

XGenerator x_generator(const StarRep& rep, const Rba& /*rba*/, const DegreeMap& dm, const DcBasis& dc,
                       double m_chi, const ToleranceConfig& tol) {
  if (rep.dim != 2) throw Error(ErrorCode::precondition, "x_generator needs a 2-dimensional *-representation");
  XGenerator g;
  const Eigen::Matrix2d xp = rep[dc.pair];
  g.xd = xp - rep[dc.pair_star];
  if ((g.xd + g.xd.transpose()).cwiseAbs().maxCoeff() > tol.eps_residual * scale_of(g.xd)) {
    throw Error(ErrorCode::contract_violation, "X(d) is not antisymmetric; *-representation contract broken");
  }
  g.x = m_chi * g.xd;
  const Eigen::Matrix2d sq = g.x * g.x;
  g.a = 0.5 * sq.trace();
  g.scalar_residual = (sq - g.a * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  const double n = dm.order.to_double();
  const double delta_p = dm[dc.pair];
  g.expected_a = -n * delta_p * m_chi;
  const double off = xp(0, 1) - xp(1, 0);
  g.pair_identity_residual = std::abs(m_chi * off * off - n * delta_p);

  const double s = 1.0 + std::abs(g.expected_a);
  if (g.scalar_residual > tol.eps_residual * s) {
    throw Error(ErrorCode::contract_violation, "x^2 is not a scalar matrix");
  }
  if (std::abs(g.a - g.expected_a) > tol.eps_residual * s) {
    throw Error(ErrorCode::contract_violation,
                "x^2 = " + format_double(g.a) + " I differs from -n delta m_chi = " + format_double(g.expected_a));
  }
  return g;
}

YGenerator y_generator(const StarRep& rep, const Rba& rba, const DcBasis& dc, const Eigen::Matrix2d& x,
                       const ToleranceConfig& tol) {
  if (rep.dim != 2) throw Error(ErrorCode::precondition, "y_generator needs a 2-dimensional *-representation");
  std::vector<std::optional<std::size_t>> candidates;
  for (std::size_t i = 1; i < rba.rank(); ++i)
    if (rba.is_real(i)) candidates.emplace_back(i);
  candidates.emplace_back(std::nullopt);

  for (const auto& ell : candidates) {
    const Eigen::Matrix2d s = ell ? Eigen::Matrix2d(rep[*ell]) : Eigen::Matrix2d(rep[dc.pair] + rep[dc.pair_star]);
    const double tr = s.trace();
    const Eigen::Matrix2d traceless = s - 0.5 * tr * Eigen::Matrix2d::Identity();
    if (traceless.norm() <= tol.eps_residual) continue;

    YGenerator g;
    g.ell = ell;
    g.y = 2.0 * s - tr * Eigen::Matrix2d::Identity();
    const double diff = s(0, 0) - s(1, 1);
    const double off = 0.5 * (s(0, 1) + s(1, 0));
    g.beta = diff * diff + 4.0 * off * off;
    const Eigen::Matrix2d sq = g.y * g.y;
    g.scalar_residual = (sq - g.beta * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
    g.anticommutation_residual = (x * g.y + g.y * x).cwiseAbs().maxCoeff();
    const double sc = (1.0 + g.beta) * scale_of(x);
    if (g.scalar_residual > tol.eps_residual * (1.0 + g.beta) ||
        g.anticommutation_residual > tol.eps_residual * sc) {
      throw Error(ErrorCode::contract_violation, "y fails y^2 = beta I or xy = -yx");
    }
    if (!(g.beta > 0.0)) throw Error(ErrorCode::contract_violation, "beta is not positive");
    return g;
  }
  throw Error(ErrorCode::contract_violation,
              "component not 4-dimensional: every *-invariant image is scalar");
}

OnePairAnalysis analyze_one_pair(const Rba& rba, const Decomposition& dec,
                                 const IndicatorReport& indicators, const ToleranceConfig& tol) {
  OnePairAnalysis out;
  out.verdict = classify_one_pair(rba, dec.table, indicators, tol);
  out.dc = dc_change_of_basis(rba);
  const Character& chi = dec.table[out.verdict.chi_index];
  out.rep = star_rep_extract(rba, dec.degrees, chi, tol);
  out.x = x_generator(out.rep, rba, dec.degrees, out.dc, chi.multiplicity, tol);
  out.y = y_generator(out.rep, rba, out.dc, out.x.x, tol);

  QuaternionSymbol& sym = out.symbol;
  const Scalar n = dec.degrees.order;
  const Scalar& delta_p = dec.degrees.values[out.dc.pair];
  const Scalar a = -(n * delta_p * chi.multiplicity_value());
  const auto beta = snap_rational(out.y.beta, tol.eps_zero * std::max(1.0, out.y.beta) * 10, kSnapDenominator);
  if (rba.is_exact() && a.is_exact() && chi.is_exact() && beta) {
    sym.a = a;
    sym.beta = Scalar(*beta);
    sym.field_mode = FieldMode::rational;
    sym.hilbert = hilbert_profile(a.exact(), *beta);
    sym.overall = sym.hilbert->split ? SplitVerdict::split : SplitVerdict::division;
  } else {
    sym.a = Scalar(out.x.a);
    sym.beta = Scalar(out.y.beta);
    sym.field_mode = FieldMode::real_numeric;
    sym.overall = SplitVerdict::real_split_only;
  }
  return out;
}

QuaternionSymbol symbol(const Rba& rba, const ToleranceConfig& tol) {
  dc_change_of_basis(rba);  // reject early when the pair structure is wrong
  Decomposition dec = decompose(rba, tol);
  const IndicatorReport ind = indicator_report(dec.table, rba, dec.degrees, tol);
  return analyze_one_pair(rba, dec, ind, tol).symbol;
}

QuaternionVerifyReport quaternion_verify(const Rba& rba, std::span<const Quaternion<double>> images,
                                         const Character& chi, const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  if (images.size() != r) throw Error(ErrorCode::structural, "need one quaternion per basis element");
  QuaternionVerifyReport rep;
  auto dist = [](const Quaternion<double>& q) {
    return std::max({std::abs(q.t), std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  };
  double scale = 1.0;
  for (const auto& q : images) scale = std::max(scale, dist(q));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Quaternion<double> diff = images[i] * images[j];
      for (std::size_t k = 0; k < r; ++k) diff = diff - rba.lambda_d(i, j, k) * images[k];
      const double res = dist(diff);
      if (res > rep.homomorphism_residual) {
        rep.homomorphism_residual = res;
        rep.worst_triple = "(" + std::to_string(i) + "," + std::to_string(j) + ",*)";
      }
    }
  Eigen::MatrixXd coords(4, static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r; ++i) {
    rep.star_residual = std::max(rep.star_residual, dist(images[rba.star(i)] - images[i].conj()));
    rep.trace_residual = std::max(rep.trace_residual,
                                  std::abs(images[i].reduced_trace() - chi.values[static_cast<Eigen::Index>(i)].real()));
    coords.col(static_cast<Eigen::Index>(i)) << images[i].t, images[i].x, images[i].y, images[i].z;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords);
  const auto& sv = svd.singularValues();
  for (Eigen::Index c = 0; c < sv.size(); ++c) rep.span_rank += sv[c] > tol.eps_cluster * sv[0] ? 1 : 0;
  const double bound = tol.eps_residual * scale * scale;
  rep.passed = rep.homomorphism_residual < bound && rep.star_residual < bound &&
               rep.trace_residual < bound && rep.span_rank == 4;
  return rep;
}

Eigen::Matrix4d left_multiplication_matrix(const Quaternion<double>& q) {
  const Quaternion<double> basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) {
    const auto p = q * basis[c];
    m.col(c) << p.t, p.x, p.y, p.z;
  }
  return m;
}

}  // namespace rba
