#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rba/rba.hpp"
#include "rba/tolerance.hpp"

namespace rba {

inline constexpr const char* kToolName = "rba";
inline constexpr const char* kToolVersion = "1.0.0";

/// A character value: real (exact or float) or complex (float).
struct ReportValue {
  Scalar re;
  std::optional<double> im;
  friend bool operator==(const ReportValue&, const ReportValue&) = default;
};

struct ReportCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
  friend bool operator==(const ReportCheck&, const ReportCheck&) = default;
};

struct ReportCharacter {
  int degree = 0;
  std::vector<ReportValue> values;
  Scalar multiplicity;
  double multiplicity_solve = 0.0;
  std::optional<int> nu;
  double nu_raw = 0.0;
  /// "split", "quaternionic", "complex", "skipped" or "failed"
  std::string star_rep = "skipped";
  std::optional<bool> charpoly_rational;
  friend bool operator==(const ReportCharacter&, const ReportCharacter&) = default;
};

struct ReportQuaternion {
  std::size_t chi_index = 0;
  std::size_t pair = 0;
  std::size_t pair_star = 0;
  Scalar a;
  Scalar beta;
  Scalar xd_square;  // X(d)^2 = xd_square * I
  std::optional<std::size_t> ell;
  std::string field_mode;
  std::string verdict;
  std::vector<std::pair<std::string, int>> hilbert;
  std::optional<int> hilbert_product;
  double x_residual = 0.0;
  double anticommutation_residual = 0.0;
  friend bool operator==(const ReportQuaternion&, const ReportQuaternion&) = default;
};

struct ReportTwoAdicRow {
  Scalar phi1, phi2, phi3, phi3_formula;
  bool relation_holds = false;
  std::vector<std::optional<int>> valuations;
  std::string verdict;
  friend bool operator==(const ReportTwoAdicRow&, const ReportTwoAdicRow&) = default;
};

struct ReportOffending {
  std::size_t i = 0, j = 0, k = 0;
  Scalar value;
  friend bool operator==(const ReportOffending&, const ReportOffending&) = default;
};

struct ReportIntegrality {
  bool integral = true;
  std::size_t offending_count = 0;
  std::vector<ReportOffending> offending;  // first few
  std::optional<std::string> two_adic_verdict;
  std::vector<ReportTwoAdicRow> two_adic_rows;
  friend bool operator==(const ReportIntegrality&, const ReportIntegrality&) = default;
};

struct AnalysisReport {
  // metadata
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string source;
  std::uint64_t seed = 0;
  double eps_zero = 0.0, eps_cluster = 0.0, eps_residual = 0.0;
  std::string mode;  // "exact" or "float"

  // summary
  std::size_t rank = 0;
  std::size_t real_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> nonreal_pairs;
  std::vector<std::string> labels;
  bool commutative = false;
  bool standardized = false;  // input was rescaled to the standard basis
  std::optional<Scalar> order;

  std::vector<ReportCheck> validation;
  std::vector<Scalar> degrees;
  std::vector<ReportCharacter> characters;

  // indicator identities
  std::optional<long> s_predicted;
  std::optional<std::string> indicator_pattern;
  double indicator_max_deviation = 0.0;
  std::vector<ReportCheck> identities;

  std::optional<std::string> one_pair_lemma;  // "holds" or the violation
  std::optional<int> rank7_class;
  std::optional<ReportQuaternion> quaternion;
  std::optional<ReportIntegrality> integrality;

  /// Stages that did not apply or failed, with the reason.
  std::vector<std::string> notes;
  /// All validation and identity checks passed.
  bool passed = false;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Runs the full pipeline on an algebra. Stages that do not apply to the input
/// are recorded in notes; errors in mandatory stages propagate.
AnalysisReport analyze(const Rba& rba, const ToleranceConfig& tol, const std::string& source = {});

/// Canonical JSON: sorted keys, two-space indent, exact values as "p/q"
/// strings, floats as JSON numbers.
std::string to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const std::string& text);

std::string render_text(const AnalysisReport& r);

}  // namespace rba
