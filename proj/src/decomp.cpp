#include "rba/decomp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rba/error.hpp"
#include "rba/random.hpp"

namespace rba {

namespace {

using Complex = std::complex<double>;

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Numerical rank from singular values sorted in decreasing order: values at or
// below eps_zero * max are zero, values at or above eps_cluster * max count,
// anything in between is ambiguous.
template <typename Vec>
std::size_t numeric_rank(const Vec& sigma, const ToleranceConfig& tol, ErrorCode code,
                         const char* what) {
  if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
  const double top = sigma[0];
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double s = sigma[i];
    if (s >= tol.eps_cluster * top) {
      ++rank;
    } else if (s > tol.eps_zero * top) {
      throw Error(code, std::string(what) + ": singular value " + format_double(s / top) +
                            " (relative) lies between eps_zero and eps_cluster; adjust tolerances");
    }
  }
  return rank;
}

Eigen::MatrixXcd left_matrix(const Rba& rba, const Eigen::VectorXcd& e) {
  const std::size_t r = rba.rank();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(as_index(r), as_index(r));
  for (std::size_t i = 0; i < r; ++i) {
    if (e[as_index(i)] == Complex(0.0)) continue;
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) m(as_index(k), as_index(j)) += e[as_index(i)] * rba.lambda_d(i, j, k);
  }
  return m;
}

Eigen::VectorXcd unit(std::size_t r, std::size_t i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(as_index(r));
  v[as_index(i)] = 1.0;
  return v;
}

double rel(double x) { return std::max(1.0, std::abs(x)); }

}  // namespace

RegularRep regular_rep(const Rba& rba) {
  const std::size_t r = rba.rank();
  RegularRep reg;
  reg.left.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    Eigen::MatrixXd l(as_index(r), as_index(r));
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) l(as_index(k), as_index(j)) = rba.lambda_d(i, j, k);
    reg.left.push_back(std::move(l));
  }
  return reg;
}

double regular_rep_residual(const Rba& rba, const RegularRep& reg) {
  const std::size_t r = rba.rank();
  double worst = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Eigen::MatrixXd d = reg.left[i] * reg.left[j];
      for (std::size_t k = 0; k < r; ++k) {
        const double c = rba.lambda_d(i, j, k);
        if (c != 0.0) d -= c * reg.left[k];
      }
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  return worst;
}

Eigen::MatrixXd center_basis(const Rba& rba, const ToleranceConfig& tol) {
  tol.check();
  const std::size_t r = rba.rank();
  // Row (i,l): sum_k z_k (lambda(k,i,l) - lambda(i,k,l)) = 0.
  Eigen::MatrixXd sys(as_index(r * r), as_index(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < r; ++l)
      for (std::size_t k = 0; k < r; ++k)
        sys(as_index(i * r + l), as_index(k)) = rba.lambda_d(k, i, l) - rba.lambda_d(i, k, l);
  if (sys.cwiseAbs().maxCoeff() == 0.0) return Eigen::MatrixXd::Identity(as_index(r), as_index(r));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  const std::size_t rank = numeric_rank(svd.singularValues(), tol, ErrorCode::center_rank_ambiguous,
                                        "center rank ambiguous");
  return svd.matrixV().rightCols(as_index(r - rank));
}

std::vector<CentralIdempotent> central_idempotents(const Rba& rba, const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  const Eigen::MatrixXd center = center_basis(rba, tol);
  const Eigen::Index k = center.cols();

  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    auto rng = make_rng(tol.rng_seed, 1000 + static_cast<std::uint64_t>(attempt));
    Eigen::VectorXd coeff(k);
    for (Eigen::Index j = 0; j < k; ++j) coeff[j] = symmetric_unit(rng);
    const Eigen::VectorXd z = center * coeff;

    // Action of z on the center, in the orthonormal center coordinates.
    Eigen::MatrixXd action(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      action.col(j) = center.transpose() * rba.multiply(z, Eigen::VectorXd(center.col(j)));
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(action, false);
    if (es.info() != Eigen::Success) continue;
    const Eigen::VectorXcd omega = es.eigenvalues();

    bool separated = true;
    for (Eigen::Index a = 0; a < k && separated; ++a)
      for (Eigen::Index b = a + 1; b < k && separated; ++b)
        separated = std::abs(omega[a] - omega[b]) >= tol.eps_cluster * (1.0 + std::abs(omega[a]));
    if (!separated) continue;

    const Eigen::VectorXcd zc = z.cast<Complex>();
    std::vector<CentralIdempotent> out;
    for (Eigen::Index a = 0; a < k; ++a) {
      Eigen::VectorXcd e = unit(r, 0);
      for (Eigen::Index b = 0; b < k; ++b) {
        if (b == a) continue;
        Eigen::VectorXcd factor = zc;
        factor[0] -= omega[b];
        e = rba.multiply(factor, e) / (omega[a] - omega[b]);
      }
      if (e.imag().cwiseAbs().maxCoeff() <= tol.eps_zero) e = e.real().cast<Complex>();

      const Eigen::MatrixXcd l = left_matrix(rba, e);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(l);
      const auto rank = numeric_rank(svd.singularValues(), tol, ErrorCode::idempotent_separation_failed,
                                     "idempotent rank ambiguous");
      const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rank))));
      out.push_back({std::move(e), dim, static_cast<std::size_t>(dim * dim) == rank});
    }
    return out;
  }
  throw Error(ErrorCode::idempotent_separation_failed,
              "idempotent separation failed: central eigenvalues collide after 8 samples");
}

IdempotentResiduals idempotent_residuals(const Rba& rba,
                                         std::span<const CentralIdempotent> idempotents) {
  const std::size_t r = rba.rank();
  IdempotentResiduals res;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(as_index(r));
  for (std::size_t a = 0; a < idempotents.size(); ++a) {
    const auto& e = idempotents[a].coeffs;
    sum += e;
    res.idempotence = std::max(res.idempotence, (rba.multiply(e, e) - e).cwiseAbs().maxCoeff());
    for (std::size_t b = 0; b < idempotents.size(); ++b) {
      if (a == b) continue;
      res.orthogonality = std::max(
          res.orthogonality, rba.multiply(e, idempotents[b].coeffs).cwiseAbs().maxCoeff());
    }
  }
  res.sum_to_identity = (sum - unit(r, 0)).cwiseAbs().maxCoeff();
  return res;
}

// ---------------------------------------------------------------------------

bool Character::is_real_valued(double eps) const {
  return values.imag().cwiseAbs().maxCoeff() <= eps;
}

bool Character::is_exact() const {
  return exact_multiplicity.has_value() &&
         std::all_of(exact_values.begin(), exact_values.end(),
                     [](const auto& v) { return v.has_value(); });
}

Scalar Character::value(std::size_t i) const {
  if (i < exact_values.size() && exact_values[i]) return Scalar(*exact_values[i]);
  return Scalar(values[as_index(i)].real());
}

Scalar Character::multiplicity_value() const {
  if (exact_multiplicity) return Scalar(*exact_multiplicity);
  return Scalar(multiplicity);
}

bool CharacterTable::is_exact() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& c) { return c.is_exact(); });
}

CharacterTable character_table(const Rba& rba, const DegreeMap& dm,
                               std::vector<CentralIdempotent> idempotents,
                               const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  const RegularRep reg = regular_rep(rba);
  const double n = dm.order.to_double();

  std::vector<Character> rows;
  rows.reserve(idempotents.size());
  for (auto& e : idempotents) {
    Character chi;
    chi.degree = e.block_dim;
    if (chi.degree <= 0) throw Error(ErrorCode::contract_violation, "idempotent with zero block");
    const Eigen::MatrixXcd le = left_matrix(rba, e.coeffs);
    chi.values.resize(as_index(r));
    for (std::size_t i = 0; i < r; ++i) {
      chi.values[as_index(i)] = (reg.left[i].cast<Complex>() * le).trace() / static_cast<double>(chi.degree);
    }
    const Complex m = n * e.coeffs[0] / static_cast<double>(chi.degree);
    if (std::abs(m.imag()) > tol.eps_residual * rel(m.real())) {
      throw Error(ErrorCode::multiplicity_inconsistency, "multiplicity is not real");
    }
    chi.multiplicity = m.real();
    if (!(chi.multiplicity > 0.0)) {
      throw Error(ErrorCode::multiplicity_inconsistency, "multiplicity is not positive");
    }
    chi.idempotent = std::move(e);
    rows.push_back(std::move(chi));
  }

  // Degree map first.
  const Eigen::VectorXd delta = dm.as_vector();
  auto is_delta = [&](const Character& c) {
    return c.degree == 1 &&
           (c.values - delta.cast<Complex>()).cwiseAbs().maxCoeff() <= tol.eps_cluster * rel(delta.maxCoeff());
  };
  const auto it = std::find_if(rows.begin(), rows.end(), is_delta);
  if (it == rows.end()) {
    throw Error(ErrorCode::contract_violation, "degree map does not appear in the character table");
  }
  std::iter_swap(rows.begin(), it);
  auto key = [&](const Character& c) {
    std::vector<double> k{static_cast<double>(c.degree)};
    for (Eigen::Index i = 0; i < c.values.size(); ++i) k.push_back(std::round(c.values[i].real() / tol.eps_cluster));
    for (Eigen::Index i = 0; i < c.values.size(); ++i) k.push_back(std::round(c.values[i].imag() / tol.eps_cluster));
    return k;
  };
  std::stable_sort(rows.begin() + 1, rows.end(),
                   [&](const Character& a, const Character& b) { return key(a) < key(b); });

  // Second multiplicity route: least squares for sum_psi m_psi psi(b_i) = n [i = 0].
  const auto kk = as_index(rows.size());
  Eigen::MatrixXcd t(as_index(r), kk);
  for (Eigen::Index c = 0; c < kk; ++c) t.col(c) = rows[static_cast<std::size_t>(c)].values;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(as_index(r));
  rhs[0] = n;
  const Eigen::VectorXcd m_solve = t.colPivHouseholderQr().solve(rhs);

  CharacterTable table;
  for (Eigen::Index c = 0; c < kk; ++c) {
    auto& chi = rows[static_cast<std::size_t>(c)];
    chi.multiplicity_solve = m_solve[c].real();
    const double gap = std::abs(m_solve[c] - Complex(chi.multiplicity)) / rel(chi.multiplicity);
    table.multiplicity_route_gap = std::max(table.multiplicity_route_gap, gap);
  }
  if (table.multiplicity_route_gap > tol.eps_residual) {
    throw Error(ErrorCode::multiplicity_inconsistency,
                "multiplicity inconsistency: routes differ by " + format_double(table.multiplicity_route_gap));
  }

  for (auto& chi : rows) {
    chi.exact_values.assign(r, std::nullopt);
    if (!rba.is_exact()) continue;
    for (std::size_t i = 0; i < r; ++i) {
      const Complex v = chi.values[as_index(i)];
      if (std::abs(v.imag()) > tol.eps_zero * rel(v.real())) continue;
      chi.exact_values[i] = snap_rational(v.real(), tol.eps_zero * rel(v.real()), kSnapDenominator);
    }
    chi.exact_multiplicity =
        snap_rational(chi.multiplicity, tol.eps_zero * rel(chi.multiplicity), kSnapDenominator);
  }
  if (rows.front().exact_multiplicity && *rows.front().exact_multiplicity != 1) {
    throw Error(ErrorCode::multiplicity_inconsistency, "multiplicity of the degree map is not 1");
  }
  if (std::abs(rows.front().multiplicity - 1.0) > tol.eps_residual) {
    throw Error(ErrorCode::multiplicity_inconsistency, "multiplicity of the degree map is not 1");
  }
  table.rows = std::move(rows);
  return table;
}

Decomposition decompose(const Rba& rba, const ToleranceConfig& tol) {
  DegreeMap dm = degree_map(rba, tol);
  CharacterTable table = character_table(rba, dm, central_idempotents(rba, tol), tol);
  return Decomposition{std::move(dm), std::move(table)};
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd StarRep::image(const Eigen::VectorXd& coeffs) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(as_index(dim), as_index(dim));
  for (std::size_t i = 0; i < images.size(); ++i) out += coeffs[as_index(i)] * images[i];
  return out;
}

StarRepResiduals check_star_rep(const StarRep& rep, const Rba& rba) {
  const std::size_t r = rba.rank();
  if (rep.images.size() != r) throw Error(ErrorCode::structural, "representation has wrong length");
  StarRepResiduals res;
  const auto d = as_index(rep.dim);
  res.identity = (rep.images[0] - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < r; ++i) {
    res.star = std::max(res.star,
                        (rep.images[rba.star(i)] - rep.images[i].transpose()).cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < r; ++j) {
      Eigen::MatrixXd diff = rep.images[i] * rep.images[j];
      for (std::size_t k = 0; k < r; ++k) diff -= rba.lambda_d(i, j, k) * rep.images[k];
      res.homomorphism = std::max(res.homomorphism, diff.cwiseAbs().maxCoeff());
    }
  }
  return res;
}

StarRep star_rep_extract(const Rba& rba, const DegreeMap& dm, const Character& chi,
                         const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  const auto R = as_index(r);
  if (!chi.is_real_valued(tol.eps_residual)) {
    throw Error(ErrorCode::precondition, "star_rep_extract needs a real-valued character");
  }
  const auto d = static_cast<std::size_t>(chi.degree);
  StarRep rep;
  rep.dim = d;
  if (d == 1) {
    for (std::size_t i = 0; i < r; ++i) rep.images.push_back(Eigen::MatrixXd::Constant(1, 1, chi.values[as_index(i)].real()));
    return rep;
  }

  // Regular representation in the tau-orthonormal basis b_i / sqrt(tau(b_i b_i*)):
  // there M_{i*} = M_i^T.
  const double n = dm.order.to_double();
  Eigen::VectorXd scale(R);
  for (std::size_t i = 0; i < r; ++i) scale[as_index(i)] = std::sqrt(n * rba.lambda_d(i, rba.star(i), 0));
  const RegularRep reg = regular_rep(rba);
  std::vector<Eigen::MatrixXd> m(r);
  for (std::size_t i = 0; i < r; ++i) {
    m[i] = scale.asDiagonal() * reg.left[i] * scale.cwiseInverse().asDiagonal();
  }

  const Eigen::VectorXd e = chi.idempotent.coeffs.real();
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(R, R);
  for (std::size_t i = 0; i < r; ++i) proj += e[as_index(i)] * m[i];
  proj = 0.5 * (proj + proj.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pes(proj);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = 0; c < R; ++c)
    if (pes.eigenvalues()[c] > 0.5) keep.push_back(c);
  if (keep.size() != d * d) {
    throw Error(ErrorCode::extraction_failed,
                "isotypic subspace has dimension " + std::to_string(keep.size()) + ", expected " +
                    std::to_string(d * d));
  }
  Eigen::MatrixXd iso(R, as_index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) iso.col(as_index(c)) = pes.eigenvectors().col(keep[c]);

  // A vector in one eigenspace of a generic symmetric element of the block lies
  // in a single copy of the irreducible module; its cyclic span is that copy.
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    auto rng = make_rng(tol.rng_seed, 2000 + static_cast<std::uint64_t>(attempt));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(R, R);
    for (std::size_t i = 0; i < r; ++i) {
      const double c = symmetric_unit(rng);
      h += c * (m[i] + m[rba.star(i)]);
    }
    Eigen::MatrixXd hw = iso.transpose() * h * iso;
    hw = 0.5 * (hw + hw.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hes(hw);
    const Eigen::VectorXd w = iso * hes.eigenvectors().col(0);

    Eigen::MatrixXd cyc(R, R);
    for (std::size_t i = 0; i < r; ++i) cyc.col(as_index(i)) = m[i] * w;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cyc, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index c = 0; c < sv.size(); ++c) rank += sv[c] > tol.eps_cluster * sv[0] ? 1 : 0;
    if (rank != d) continue;

    const Eigen::MatrixXd q = svd.matrixU().leftCols(as_index(d));
    rep.images.clear();
    for (std::size_t i = 0; i < r; ++i) rep.images.push_back(q.transpose() * m[i] * q);
    for (std::size_t i = 0; i < r; ++i) {
      const double want = chi.values[as_index(i)].real();
      if (std::abs(rep.images[i].trace() - want) > tol.eps_residual * rel(want)) {
        throw Error(ErrorCode::contract_violation, "extracted representation does not afford chi");
      }
    }
    return rep;
  }
  throw Error(ErrorCode::extraction_failed,
              "irreducible subspace extraction failed (component not split over the reals?)");
}

SymmetrizeResult symmetrize(const Rba& rba, const DegreeMap& dm,
                            std::span<const Eigen::MatrixXd> phi, const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  if (phi.size() != r) throw Error(ErrorCode::structural, "representation has wrong length");
  const auto d = phi[0].rows();
  double norm = 0.0;
  for (const auto& p : phi) {
    if (p.rows() != d || p.cols() != d) throw Error(ErrorCode::structural, "matrices must be square and equal size");
    norm = std::max(norm, p.cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Eigen::MatrixXd diff = phi[i] * phi[j];
      for (std::size_t k = 0; k < r; ++k) diff -= rba.lambda_d(i, j, k) * phi[k];
      if (diff.cwiseAbs().maxCoeff() > tol.eps_residual * (1.0 + norm * norm)) {
        throw Error(ErrorCode::invalid_input, "Phi is not a representation of this algebra");
      }
    }

  SymmetrizeResult out;
  out.averaged = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < r; ++i) out.averaged += phi[i] * phi[i].transpose() / dm[i];
  out.asymmetry = (out.averaged - out.averaged.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (out.averaged + out.averaged.transpose()));
  const Eigen::VectorXd ev = es.eigenvalues();
  out.min_eigenvalue = ev.minCoeff();
  if (!(out.min_eigenvalue > tol.eps_zero * ev.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::not_positive_definite,
                "averaged matrix is not positive definite: eigenvalue " + format_double(out.min_eigenvalue));
  }
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::MatrixXd b = v * ev.cwiseSqrt().asDiagonal() * v.transpose();
  const Eigen::MatrixXd b_inv = v * ev.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  out.rep.dim = static_cast<std::size_t>(d);
  for (const auto& p : phi) out.rep.images.push_back(b_inv * p * b);
  return out;
}

std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& x) {
  // Faddeev-LeVerrier.
  const auto n = x.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = 1.0;
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = x * mk + c[static_cast<std::size_t>(k - 1)] * Eigen::MatrixXd::Identity(n, n);
    c[static_cast<std::size_t>(k)] = -(x * mk).trace() / static_cast<double>(k);
  }
  return c;
}

CharpolyReport charpoly_check(const StarRep& rep, const Rba& rba, const Character& chi,
                              const ToleranceConfig& tol) {
  CharpolyReport report;
  report.certified_rational = rba.is_exact() && chi.is_exact();
  for (const auto& x : rep.images) {
    CharpolyEntry entry;
    entry.coeffs = characteristic_polynomial(x);
    for (double c : entry.coeffs) {
      auto s = snap_rational(c, tol.eps_zero * rel(c) * 10, kSnapDenominator);
      report.all_rational = report.all_rational && s.has_value();
      entry.snapped.push_back(std::move(s));
    }
    report.entries.push_back(std::move(entry));
  }
  report.lemma_violation = report.certified_rational && !report.all_rational;
  return report;
}

}  // namespace rba
