#include "rba/rba.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rba/error.hpp"
#include "rba/random.hpp"

namespace rba {

Rba::Rba(std::size_t rank, std::vector<Scalar> lambda, std::vector<std::size_t> star,
         std::vector<std::string> labels)
    : rank_(rank), lambda_(std::move(lambda)), star_(std::move(star)), labels_(std::move(labels)) {
  if (rank_ == 0) throw Error(ErrorCode::structural, "rank must be positive");
  if (lambda_.size() != rank_ * rank_ * rank_) {
    std::ostringstream msg;
    msg << "structure tensor has " << lambda_.size() << " entries, expected " << rank_ << "^3";
    throw Error(ErrorCode::structural, msg.str());
  }
  if (star_.size() != rank_) throw Error(ErrorCode::structural, "star map has wrong length");
  std::vector<bool> seen(rank_, false);
  for (std::size_t s : star_) {
    if (s >= rank_ || seen[s]) throw Error(ErrorCode::structural, "star is not a permutation");
    seen[s] = true;
  }
  if (!labels_.empty() && labels_.size() != rank_) {
    throw Error(ErrorCode::structural, "label count does not match rank");
  }
  dense_.reserve(lambda_.size());
  for (const auto& s : lambda_) {
    dense_.push_back(s.to_double());
    exact_ = exact_ && s.is_exact();
  }
}

std::string Rba::label(std::size_t i) const {
  if (!labels_.empty()) return labels_.at(i);
  return "b" + std::to_string(i);
}

Rba Rba::to_float() const {
  std::vector<Scalar> lam;
  lam.reserve(lambda_.size());
  for (const auto& s : lambda_) lam.push_back(s.to_float());
  return Rba(rank_, std::move(lam), star_, labels_);
}

std::size_t Rba::real_count() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < rank_; ++i) s += is_real(i) ? 1 : 0;
  return s;
}

std::vector<std::pair<std::size_t, std::size_t>> Rba::nonreal_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (star_[i] > i) out.emplace_back(i, star_[i]);
  }
  return out;
}

bool Rba::is_commutative(const ToleranceConfig& tol) const {
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = i + 1; j < rank_; ++j)
      for (std::size_t k = 0; k < rank_; ++k) {
        if (!(lambda(i, j, k) - lambda(j, i, k)).is_zero(tol)) return false;
      }
  return true;
}

Eigen::VectorXd Rba::multiply(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rank_));
  for (std::size_t i = 0; i < rank_; ++i) {
    if (u[i] == 0.0) continue;
    for (std::size_t j = 0; j < rank_; ++j) {
      const double w = u[i] * v[j];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < rank_; ++k) out[k] += w * lambda_d(i, j, k);
    }
  }
  return out;
}

Eigen::VectorXcd Rba::multiply(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rank_));
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t j = 0; j < rank_; ++j) {
      const std::complex<double> w = u[i] * v[j];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < rank_; ++k) out[k] += w * lambda_d(i, j, k);
    }
  }
  return out;
}

std::vector<Scalar> Rba::multiply(std::span<const Scalar> u, std::span<const Scalar> v) const {
  std::vector<Scalar> out(rank_, Scalar(0));
  for (std::size_t i = 0; i < rank_; ++i) {
    if (u[i].is_exact() && u[i].exact() == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) {
      const Scalar w = u[i] * v[j];
      for (std::size_t k = 0; k < rank_; ++k) out[k] += w * lambda(i, j, k);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const CheckResult& ValidationReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw Error(ErrorCode::contract_violation, "no check named " + name);
}

namespace {

// Tracks the largest residual seen and the first location that exceeded the
// threshold.
struct ResidualTracker {
  const ToleranceConfig& tol;
  bool exact;
  double max_residual = 0.0;
  bool failed = false;
  std::string first_failure;

  void add(const Scalar& diff, const std::string& where) {
    const double r = std::abs(diff.to_double());
    max_residual = std::max(max_residual, r);
    const bool bad = exact && diff.is_exact() ? diff.exact() != 0 : r > tol.eps_residual;
    if (bad && !failed) {
      failed = true;
      first_failure = where;
    }
  }
};

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream s;
  s << "(" << i << "," << j << "," << k << ")";
  return s.str();
}

}  // namespace

ValidationReport validate(const Rba& rba, const ToleranceConfig& tol) {
  tol.check();
  const std::size_t r = rba.rank();
  const bool exact = rba.is_exact();
  ValidationReport report;

  {
    CheckResult c{"star_involution", true, 0.0, ""};
    if (rba.star(0) != 0) {
      c.passed = false;
      c.detail = "0* != 0";
    }
    for (std::size_t i = 0; i < r && c.passed; ++i) {
      if (rba.star(rba.star(i)) != i) {
        c.passed = false;
        c.detail = "(i*)* != i at i=" + std::to_string(i);
      }
    }
    report.checks.push_back(c);
  }

  {
    ResidualTracker t{tol, exact, 0.0, false, {}};
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const Scalar delta = Scalar(j == k ? 1 : 0);
        t.add(rba.lambda(0, j, k) - delta, "lambda" + triple(0, j, k));
        t.add(rba.lambda(j, 0, k) - delta, "lambda" + triple(j, 0, k));
      }
    report.checks.push_back({"identity_element", !t.failed, t.max_residual, t.first_failure});
  }

  {
    ResidualTracker t{tol, exact, 0.0, false, {}};
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
          t.add(rba.lambda(i, j, k) - rba.lambda(rba.star(j), rba.star(i), rba.star(k)),
                "lambda" + triple(i, j, k));
        }
    report.checks.push_back({"anti_automorphism", !t.failed, t.max_residual, t.first_failure});
  }

  {
    CheckResult c{"pseudo_inverse", true, 0.0, ""};
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t is = rba.star(i);
      for (std::size_t j = 0; j < r; ++j) {
        const Scalar& v = rba.lambda(i, j, 0);
        if (j == is) {
          const Scalar& w = rba.lambda(is, i, 0);
          const double diff = std::abs((v - w).to_double());
          c.max_residual = std::max(c.max_residual, diff);
          const bool unequal = exact ? v.exact() != w.exact() : diff > tol.eps_residual;
          if (c.passed && (v.sign(tol) <= 0 || unequal)) {
            c.passed = false;
            c.detail = "(" + std::to_string(i) + "," + std::to_string(i) + "*)";
          }
        } else {
          c.max_residual = std::max(c.max_residual, std::abs(v.to_double()));
          if (c.passed && !v.is_zero(tol)) {
            c.passed = false;
            c.detail = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
          }
        }
      }
    }
    report.checks.push_back(c);
  }

  {
    ResidualTracker t{tol, exact, 0.0, false, {}};
    if (exact) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t k = 0; k < r; ++k)
            for (std::size_t l = 0; l < r; ++l) {
              Rational lhs = 0, rhs = 0;
              for (std::size_t m = 0; m < r; ++m) {
                lhs += rba.lambda(i, j, m).exact() * rba.lambda(m, k, l).exact();
                rhs += rba.lambda(j, k, m).exact() * rba.lambda(i, m, l).exact();
              }
              t.add(Scalar(Rational(lhs - rhs)), "(i,j,k,l)=(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) + ")");
            }
    } else {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t k = 0; k < r; ++k)
            for (std::size_t l = 0; l < r; ++l) {
              double lhs = 0, rhs = 0;
              for (std::size_t m = 0; m < r; ++m) {
                lhs += rba.lambda_d(i, j, m) * rba.lambda_d(m, k, l);
                rhs += rba.lambda_d(j, k, m) * rba.lambda_d(i, m, l);
              }
              t.add(Scalar(lhs - rhs), "(i,j,k,l)=(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) + ")");
            }
    }
    report.checks.push_back({"associativity", !t.failed, t.max_residual, t.first_failure});
  }
  return report;
}

// ---------------------------------------------------------------------------

Eigen::VectorXd DegreeMap::as_vector() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i].to_double();
  return v;
}

namespace {

double homomorphism_residual(const Rba& rba, const Eigen::VectorXd& f) {
  const std::size_t r = rba.rank();
  double worst = 0.0;
  const double scale = 1.0 + f.cwiseAbs().maxCoeff() * f.cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < r; ++k) s += rba.lambda_d(i, j, k) * f[k];
      worst = std::max(worst, std::abs(f[i] * f[j] - s) / scale);
    }
  return worst;
}

bool exact_homomorphism(const Rba& rba, const std::vector<Rational>& f) {
  const std::size_t r = rba.rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < r; ++k) s += rba.lambda(i, j, k).exact() * f[k];
      if (s != f[i] * f[j]) return false;
    }
  return true;
}

}  // namespace

DegreeMap make_degree_map(const Rba& rba, std::vector<Scalar> values, const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  if (values.size() != r) throw Error(ErrorCode::structural, "degree vector has wrong length");
  Eigen::VectorXd f(static_cast<Eigen::Index>(r));
  bool exact = rba.is_exact();
  for (std::size_t i = 0; i < r; ++i) {
    f[i] = values[i].to_double();
    exact = exact && values[i].is_exact();
    if (values[i].sign(tol) <= 0) {
      throw Error(ErrorCode::no_positive_degree_map, "degree values must be positive");
    }
  }
  if (exact) {
    std::vector<Rational> q;
    for (const auto& v : values) q.push_back(v.exact());
    if (!exact_homomorphism(rba, q)) {
      throw Error(ErrorCode::invalid_input, "degree values are not an algebra homomorphism");
    }
  } else if (homomorphism_residual(rba, f) > tol.eps_residual) {
    throw Error(ErrorCode::invalid_input, "degree values are not an algebra homomorphism");
  }
  Scalar n(0);
  for (const auto& v : values) n += v;
  return DegreeMap{std::move(values), n};
}

DegreeMap degree_map(const Rba& rba, const ToleranceConfig& tol) {
  tol.check();
  const std::size_t r = rba.rank();
  const auto R = static_cast<Eigen::Index>(r);

  // A one-dimensional representation f satisfies L_i^T f = f_i f for every left
  // regular matrix L_i, so it is an eigenvector of any combination of the L_i^T.
  std::vector<Eigen::VectorXd> found;
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts && found.empty(); ++attempt) {
    auto rng = make_rng(tol.rng_seed, static_cast<std::uint64_t>(attempt));
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(R, R);
    for (std::size_t i = 0; i < r; ++i) {
      const double c = symmetric_unit(rng);
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) z(j, k) += c * rba.lambda_d(i, j, k);  // (L_i^T)_{jk}
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(z);
    if (es.info() != Eigen::Success) continue;
    std::vector<Eigen::VectorXd> candidates;
    for (Eigen::Index e = 0; e < R; ++e) {
      Eigen::VectorXcd v = es.eigenvectors().col(e);
      if (std::abs(v[0]) < tol.eps_cluster * v.cwiseAbs().maxCoeff()) continue;
      v /= v[0];
      if (v.imag().cwiseAbs().maxCoeff() > tol.eps_cluster) continue;
      Eigen::VectorXd f = v.real();
      if (homomorphism_residual(rba, f) > tol.eps_residual * 100) continue;
      if (f.minCoeff() <= tol.eps_zero) continue;
      bool dup = false;
      for (const auto& g : candidates) dup = dup || (g - f).cwiseAbs().maxCoeff() < tol.eps_cluster;
      if (!dup) candidates.push_back(f);
    }
    found = std::move(candidates);
  }
  if (found.empty()) {
    throw Error(ErrorCode::no_positive_degree_map, "no positive degree map");
  }
  if (found.size() > 1) {
    throw Error(ErrorCode::degree_map_inconsistent,
                "more than one all-positive one-dimensional representation");
  }
  const Eigen::VectorXd& f = found.front();

  std::vector<Scalar> values;
  values.reserve(r);
  if (rba.is_exact()) {
    std::vector<Rational> q;
    for (std::size_t i = 0; i < r && q.size() == i; ++i) {
      if (auto s = snap_rational(f[i], tol.eps_zero * std::max(1.0, std::abs(f[i])) * 100,
                                 kSnapDenominator)) {
        q.push_back(*s);
      }
    }
    if (q.size() == r && exact_homomorphism(rba, q)) {
      for (auto& v : q) values.emplace_back(std::move(v));
    }
  }
  if (values.empty()) {
    for (std::size_t i = 0; i < r; ++i) values.emplace_back(f[i]);
  }
  Scalar n(0);
  for (const auto& v : values) n += v;
  return DegreeMap{std::move(values), n};
}

std::pair<Rba, DegreeMap> standardize(const Rba& rba, const DegreeMap& dm) {
  const std::size_t r = rba.rank();
  const ToleranceConfig tol{};
  std::vector<Scalar> t(r);
  for (std::size_t i = 0; i < r; ++i) {
    const Scalar& norm = rba.lambda(i, rba.star(i), 0);
    if (norm.sign(tol) <= 0) {
      throw Error(ErrorCode::invalid_input,
                  "pseudo-inverse violation: lambda(i,i*,0) <= 0 at i=" + std::to_string(i));
    }
    t[i] = dm.values.at(i) / norm;
  }
  std::vector<Scalar> lam(rba.tensor().size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Scalar tij = t[i] * t[j];
      for (std::size_t k = 0; k < r; ++k) {
        const Scalar& v = rba.lambda(i, j, k);
        lam[(i * r + j) * r + k] = (v.is_exact() && v.exact() == 0) ? v : tij * v / t[k];
      }
    }
  std::vector<Scalar> deg(r);
  Scalar n(0);
  for (std::size_t i = 0; i < r; ++i) {
    deg[i] = t[i] * dm.values[i];
    n += deg[i];
  }
  return {Rba(r, std::move(lam), rba.star_map(), rba.labels()), DegreeMap{std::move(deg), n}};
}

bool is_standard(const Rba& rba, const DegreeMap& dm, const ToleranceConfig& tol) {
  for (std::size_t i = 0; i < rba.rank(); ++i) {
    if (!(rba.lambda(i, rba.star(i), 0) - dm.values.at(i)).is_zero(tol)) return false;
  }
  return true;
}

Scalar feasible_trace(const DegreeMap& dm, std::span<const Scalar> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::structural, "empty coefficient vector");
  return dm.order * coeffs[0];
}

Eigen::MatrixXd gram_matrix(const Rba& rba, const DegreeMap& dm, const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  const auto R = static_cast<Eigen::Index>(r);
  const double n = dm.order.to_double();
  Eigen::MatrixXd g(R, R);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) = n * rba.lambda_d(i, rba.star(j), 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
  const double smallest = es.eigenvalues().minCoeff();
  if (!(smallest > tol.eps_zero)) {
    throw Error(ErrorCode::not_positive_definite,
                "Gram matrix of the feasible trace is not positive definite (min eigenvalue " +
                    format_double(smallest) + ")");
  }
  return g;
}

}  // namespace rba
