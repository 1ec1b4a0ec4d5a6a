#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rba/scalar.hpp"
#include "rba/tolerance.hpp"

namespace rba {

/// A reality-based algebra given by its structure constants
/// b_i b_j = sum_k lambda(i,j,k) b_k and the involution i -> i* on indices.
///
/// Values are immutable after construction. The constructor only checks shape
/// (tensor size, star a permutation); the algebraic axioms are checked by
/// validate().
class Rba {
 public:
  Rba(std::size_t rank, std::vector<Scalar> lambda, std::vector<std::size_t> star,
      std::vector<std::string> labels = {});

  std::size_t rank() const noexcept { return rank_; }
  const Scalar& lambda(std::size_t i, std::size_t j, std::size_t k) const {
    return lambda_[index(i, j, k)];
  }
  double lambda_d(std::size_t i, std::size_t j, std::size_t k) const {
    return dense_[index(i, j, k)];
  }
  const std::vector<Scalar>& tensor() const noexcept { return lambda_; }
  const std::vector<double>& dense() const noexcept { return dense_; }

  std::size_t star(std::size_t i) const { return star_.at(i); }
  const std::vector<std::size_t>& star_map() const noexcept { return star_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(std::size_t i) const;

  /// True iff every structure constant is an exact rational (F = Q).
  bool is_exact() const noexcept { return exact_; }
  Rba to_float() const;

  bool is_real(std::size_t i) const { return star_.at(i) == i; }
  std::size_t real_count() const;
  /// Nonreal pairs (i, i*) with i < i*.
  std::vector<std::pair<std::size_t, std::size_t>> nonreal_pairs() const;
  bool is_commutative(const ToleranceConfig& tol) const;

  /// Product of two coefficient vectors in the basis.
  Eigen::VectorXd multiply(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  Eigen::VectorXcd multiply(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;
  std::vector<Scalar> multiply(std::span<const Scalar> u, std::span<const Scalar> v) const;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * rank_ + j) * rank_ + k;
  }

  std::size_t rank_;
  std::vector<Scalar> lambda_;
  std::vector<double> dense_;
  std::vector<std::size_t> star_;
  std::vector<std::string> labels_;
  bool exact_ = true;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  const CheckResult& check(const std::string& name) const;
};

/// Checks the five RBA axioms: star is an involution fixing 0, b_0 is the
/// identity, anti-automorphism compatibility, the pseudo-inverse condition, and
/// associativity. Exact in rational mode.
ValidationReport validate(const Rba& rba, const ToleranceConfig& tol);

struct DegreeMap {
  std::vector<Scalar> values;
  Scalar order;

  double operator[](std::size_t i) const { return values.at(i).to_double(); }
  Eigen::VectorXd as_vector() const;
};

/// The unique all-positive one-dimensional representation.
DegreeMap degree_map(const Rba& rba, const ToleranceConfig& tol);

/// Builds a DegreeMap from given values, checking the homomorphism identity.
DegreeMap make_degree_map(const Rba& rba, std::vector<Scalar> values,
                          const ToleranceConfig& tol);

/// Rescales b_i by t_i = delta_i / lambda(i,i*,0) so that lambda'(i,i*,0) is
/// the new degree. Idempotent. The returned degree map is for the new basis.
std::pair<Rba, DegreeMap> standardize(const Rba& rba, const DegreeMap& dm);

bool is_standard(const Rba& rba, const DegreeMap& dm, const ToleranceConfig& tol);

/// Standard feasible trace tau(sum a_i b_i) = n a_0.
Scalar feasible_trace(const DegreeMap& dm, std::span<const Scalar> coeffs);

/// G_ij = tau(b_i b_j*) = n lambda(i, j*, 0). Throws not_positive_definite
/// when the smallest eigenvalue is not positive.
Eigen::MatrixXd gram_matrix(const Rba& rba, const DegreeMap& dm,
                            const ToleranceConfig& tol);

}  // namespace rba
