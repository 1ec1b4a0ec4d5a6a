#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rba/decomp.hpp"
#include "rba/hilbert.hpp"
#include "rba/indicator.hpp"
#include "rba/rba.hpp"

namespace rba {

/// t + x i + y j + z k over any commutative ring T.
template <typename T>
struct Quaternion {
  T t{}, x{}, y{}, z{};

  static Quaternion real(T v) { return {v, T{}, T{}, T{}}; }

  Quaternion conj() const { return {t, -x, -y, -z}; }
  /// q q* = (t^2 + x^2 + y^2 + z^2) 1
  T norm() const { return t * t + x * x + y * y + z * z; }
  T reduced_trace() const { return t + t; }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
            a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
            a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
            a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t};
  }
  friend Quaternion operator*(const T& s, const Quaternion& q) { return {s * q.t, s * q.x, s * q.y, s * q.z}; }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.t == b.t && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

/// c = b_p + b_p*, d = b_p - b_p* for the unique nonreal pair.
struct DcBasis {
  std::size_t pair = 0;
  std::size_t pair_star = 0;
  std::vector<Scalar> c;
  std::vector<Scalar> d;
};

/// Throws precondition unless there is exactly one nonreal pair.
DcBasis dc_change_of_basis(const Rba& rba);

struct XGenerator {
  Eigen::Matrix2d xd;  // X(d)
  Eigen::Matrix2d x;   // m_chi X(d)
  double a = 0.0;      // x^2 = a I
  double expected_a = 0.0;  // -n delta_p m_chi
  double scalar_residual = 0.0;
  /// |m_chi (s_p - t_p)^2 - n delta_p|
  double pair_identity_residual = 0.0;
};

XGenerator x_generator(const StarRep& rep, const Rba& rba, const DegreeMap& dm,
                       const DcBasis& dc, double m_chi, const ToleranceConfig& tol);

struct YGenerator {
  Eigen::Matrix2d y;
  double beta = 0.0;
  /// Basis index of d_ell, or nullopt when ell is c = b_p + b_p*.
  std::optional<std::size_t> ell;
  double anticommutation_residual = 0.0;
  double scalar_residual = 0.0;
};

/// Scans real basis elements 1..r-1 (skipping b_0) and then c for the first
/// non-scalar image X(d_ell); y = 2 X(d_ell) - tr X(d_ell) I.
YGenerator y_generator(const StarRep& rep, const Rba& rba, const DcBasis& dc,
                       const Eigen::Matrix2d& x, const ToleranceConfig& tol);

enum class FieldMode { rational, real_numeric };
enum class SplitVerdict { split, division, real_split_only };

std::string_view to_string(FieldMode m);
std::string_view to_string(SplitVerdict v);

struct QuaternionSymbol {
  Scalar a;
  Scalar beta;
  FieldMode field_mode = FieldMode::real_numeric;
  std::optional<HilbertProfile> hilbert;
  SplitVerdict overall = SplitVerdict::real_split_only;
};

/// Everything the one-nonreal-pair pipeline produces.
struct OnePairAnalysis {
  OnePairVerdict verdict;
  DcBasis dc;
  StarRep rep;
  XGenerator x;
  YGenerator y;
  QuaternionSymbol symbol;
};

OnePairAnalysis analyze_one_pair(const Rba& rba, const Decomposition& dec,
                                 const IndicatorReport& indicators, const ToleranceConfig& tol);

/// Full pipeline from the tensor: decomposition, indicators, the degree-2
/// *-representation, generators and the symbol (a, beta).
QuaternionSymbol symbol(const Rba& rba, const ToleranceConfig& tol);

struct QuaternionVerifyReport {
  double homomorphism_residual = 0.0;
  std::string worst_triple;
  double star_residual = 0.0;
  double trace_residual = 0.0;
  std::size_t span_rank = 0;
  bool passed = false;
};

/// Checks that images in H form an algebra *-homomorphism whose image spans H
/// and whose reduced trace 2t equals the character chi.
QuaternionVerifyReport quaternion_verify(const Rba& rba, std::span<const Quaternion<double>> images,
                                         const Character& chi, const ToleranceConfig& tol);

/// Real 4x4 matrix of left multiplication by q; a real *-representation of H.
Eigen::Matrix4d left_multiplication_matrix(const Quaternion<double>& q);

}  // namespace rba
