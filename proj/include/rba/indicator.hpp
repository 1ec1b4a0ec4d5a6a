#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rba/decomp.hpp"
#include "rba/rba.hpp"

namespace rba {

enum class IndicatorPattern { all_plus, has_zero, has_minus };

std::string_view to_string(IndicatorPattern p);

struct IndicatorValue {
  int nu = 0;
  double raw = 0.0;
  /// Computed in exact rational arithmetic.
  bool exact = false;
};

/// nu(psi) = m_psi / (n psi(b_0)) * sum_i psi(b_i^2) / delta_i, with
/// psi(b_i^2) = sum_k lambda(i,i,k) psi(b_k) taken from the tensor. Throws
/// indicator_out_of_range unless every raw value is within eps_residual of
/// -1, 0 or +1.
std::vector<IndicatorValue> fs_indicator(const CharacterTable& table, const Rba& rba,
                                         const DegreeMap& dm, const ToleranceConfig& tol);

struct IndicatorReport {
  std::vector<int> nu;
  std::vector<double> raw;
  double max_deviation = 0.0;
  /// sum_psi nu(psi) psi(b_0)
  long s_predicted = 0;
  /// number of i with i* = i
  long s_actual = 0;
  /// sum_psi psi(b_0)^2, equal to the rank
  long degree_square_sum = 0;
  IndicatorPattern pattern = IndicatorPattern::all_plus;
};

/// Computes the indicators and stores them into the table's rows.
IndicatorReport indicator_report(CharacterTable& table, const Rba& rba, const DegreeMap& dm,
                                 const ToleranceConfig& tol);

bool real_count_check(const IndicatorReport& report);

/// sum psi(b_0)^2 - sum nu(psi) psi(b_0) == r - s.
bool gap_identity_check(const IndicatorReport& report, std::size_t rank);

struct OnePairVerdict {
  std::size_t chi_index = 0;  // row of the unique degree-2 character
  std::size_t pair = 0;       // nonreal index p with p < p*
  std::size_t pair_star = 0;
};

/// For a noncommutative RBA with exactly one nonreal pair: exactly one
/// character of degree > 1, of degree 2, and every nu equal to 1. Throws
/// precondition when the algebra is out of scope and lemma_violation when the
/// table contradicts the statement.
OnePairVerdict classify_one_pair(const Rba& rba, const CharacterTable& table,
                                 const IndicatorReport& report, const ToleranceConfig& tol);

/// Number of *-invariant basis elements forced by a rank-7 indicator pattern
/// (delta, phi, psi, chi): (1,1,1,1) -> 5, (1,0,0,1) -> 3, (1,1,1,-1) -> 1.
int rank7_class_for_pattern(std::span<const int> nu);

/// Checks a noncommutative rank-7 RBA with degrees (1,1,1,2): returns s and
/// verifies it matches the indicator pattern.
int rank7_trichotomy(const Rba& rba, const CharacterTable& table, const IndicatorReport& report);

}  // namespace rba
