#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rba/rba.hpp"
#include "rba/scalar.hpp"
#include "rba/tolerance.hpp"

namespace rba {

/// Left multiplication matrices, (L_i)_{kj} = lambda(i,j,k).
struct RegularRep {
  std::vector<Eigen::MatrixXd> left;
};

RegularRep regular_rep(const Rba& rba);
/// max over i,j of |L_i L_j - sum_k lambda(i,j,k) L_k|.
double regular_rep_residual(const Rba& rba, const RegularRep& reg);

/// Orthonormal columns spanning the center Z(A), as coefficient vectors.
Eigen::MatrixXd center_basis(const Rba& rba, const ToleranceConfig& tol);

struct CentralIdempotent {
  Eigen::VectorXcd coeffs;
  int block_dim = 0;
  /// rank L(e) was a perfect square.
  bool split = true;
};

std::vector<CentralIdempotent> central_idempotents(const Rba& rba, const ToleranceConfig& tol);

struct IdempotentResiduals {
  double sum_to_identity = 0.0;
  double idempotence = 0.0;
  double orthogonality = 0.0;
};

IdempotentResiduals idempotent_residuals(const Rba& rba,
                                         std::span<const CentralIdempotent> idempotents);

struct Character {
  int degree = 0;
  Eigen::VectorXcd values;
  /// Per-index rational value when the entry snapped (exact mode only).
  std::vector<std::optional<Rational>> exact_values;
  double multiplicity = 0.0;        // n c_0(e) / degree
  double multiplicity_solve = 0.0;  // from tau = sum_psi m_psi psi
  std::optional<Rational> exact_multiplicity;
  /// Normalized Frobenius-Schur indicator; filled by the indicator module.
  std::optional<int> nu;
  CentralIdempotent idempotent;

  bool is_real_valued(double eps) const;
  /// Every value and the multiplicity snapped to a rational.
  bool is_exact() const;
  /// Exact value when snapped, otherwise the real part as a double.
  Scalar value(std::size_t i) const;
  Scalar multiplicity_value() const;
};

struct CharacterTable {
  /// rows.front() is the degree map.
  std::vector<Character> rows;
  /// Largest disagreement between the two multiplicity routes.
  double multiplicity_route_gap = 0.0;

  std::size_t size() const noexcept { return rows.size(); }
  const Character& operator[](std::size_t i) const { return rows.at(i); }
  bool is_exact() const;
};

CharacterTable character_table(const Rba& rba, const DegreeMap& dm,
                               std::vector<CentralIdempotent> idempotents,
                               const ToleranceConfig& tol);

struct Decomposition {
  DegreeMap degrees;
  CharacterTable table;
};

/// degree_map, central_idempotents and character_table in one call.
Decomposition decompose(const Rba& rba, const ToleranceConfig& tol);

/// Real *-representation: X_{i*} = X_i^T.
struct StarRep {
  std::size_t dim = 0;
  std::vector<Eigen::MatrixXd> images;

  const Eigen::MatrixXd& operator[](std::size_t i) const { return images.at(i); }
  /// Image of a coefficient vector.
  Eigen::MatrixXd image(const Eigen::VectorXd& coeffs) const;
};

struct StarRepResiduals {
  double identity = 0.0;
  double homomorphism = 0.0;
  double star = 0.0;
};

StarRepResiduals check_star_rep(const StarRep& rep, const Rba& rba);

/// Irreducible real *-representation affording chi, cut out of the
/// orthonormalized regular representation. Throws extraction_failed when the
/// component is not split over the reals (quaternionic type).
StarRep star_rep_extract(const Rba& rba, const DegreeMap& dm, const Character& chi,
                         const ToleranceConfig& tol);

struct SymmetrizeResult {
  StarRep rep;
  /// A = sum_i Phi(b_i) Phi(b_i)^T / delta_i.
  Eigen::MatrixXd averaged;
  double min_eigenvalue = 0.0;
  double asymmetry = 0.0;
};

/// Conjugates a real representation of a standard RBA into a *-representation
/// via the symmetric square root of the averaged Gram matrix.
SymmetrizeResult symmetrize(const Rba& rba, const DegreeMap& dm,
                            std::span<const Eigen::MatrixXd> phi, const ToleranceConfig& tol);

/// Coefficients of det(tI - X), leading 1 first.
std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& x);

struct CharpolyEntry {
  std::vector<double> coeffs;
  std::vector<std::optional<Rational>> snapped;
};

struct CharpolyReport {
  std::vector<CharpolyEntry> entries;  // one per basis index
  bool all_rational = true;
  /// Rational RBA with a rational character: every coefficient must snap.
  bool certified_rational = false;
  bool lemma_violation = false;
};

CharpolyReport charpoly_check(const StarRep& rep, const Rba& rba, const Character& chi,
                              const ToleranceConfig& tol);

}  // namespace rba
