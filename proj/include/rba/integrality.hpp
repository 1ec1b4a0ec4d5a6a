#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "rba/decomp.hpp"
#include "rba/indicator.hpp"
#include "rba/quadratic.hpp"
#include "rba/quaternion.hpp"
#include "rba/rba.hpp"

namespace rba {

struct OffendingEntry {
  std::size_t i = 0, j = 0, k = 0;
  Scalar value;
};

struct IntegralityReport {
  bool integral = true;
  std::vector<OffendingEntry> offending;
};

/// Every lambda(i,j,k) an integer (exact test in rational mode).
IntegralityReport integral_check(const Rba& rba, const ToleranceConfig& tol);

enum class ObstructionVerdict { obstructed_non_integral, no_obstruction, inadmissible };

std::string_view to_string(ObstructionVerdict v);

/// One degree-1 row (1, phi1, phi1, phi2, phi2, phi3, phi3) of a class-1
/// rank-7 table.
struct TwoAdicRow {
  Rational phi1, phi2, phi3;
  /// -(1 + 2 phi1 + 2 phi2) / 2
  Rational phi3_formula;
  /// 1 + 2 phi1 + 2 phi2 + 2 phi3 == 0
  bool relation_holds = false;
  /// 2-adic valuations of phi1..phi3; nullopt for zero entries.
  std::array<std::optional<int>, 3> valuations;
  ObstructionVerdict verdict = ObstructionVerdict::inadmissible;
};

TwoAdicRow two_adic_row(const Rational& phi1, const Rational& phi2, const Rational& phi3);

/// True iff the integer triple satisfies the row-sum relation. Never true:
/// 1 + 2(a + b + c) is odd.
bool integer_class1_row_exists(long long a, long long b, long long c);

struct TwoAdicReport {
  std::vector<TwoAdicRow> rows;  // one per degree-1 character other than delta
  ObstructionVerdict verdict = ObstructionVerdict::no_obstruction;
};

/// For rank 7, degrees (1,1,1,2) and a single *-invariant element. Values are
/// taken exactly when the table is exact, otherwise snapped; throws
/// precondition when a value is not rational.
TwoAdicReport two_adic_obstruction(const Rba& rba, const CharacterTable& table,
                                   const ToleranceConfig& tol);

/// Data defining the explicit rank-7 example: degree-1 rows, multiplicities,
/// and the H-valued images of the degree-2 constituent, basis order
/// b0, b1, b1*, b2, b2*, b3, b3*.
struct Rank7Inputs {
  std::vector<Rational> delta, phi, psi;
  std::array<Rational, 4> multiplicities;
  std::vector<Quaternion<QSqrt5>> images;
};

/// literal_b3 = true uses X(b3) = 1/2 + (sqrt5/2) k as printed; the default
/// uses real part -1/2, the value consistent with chi(b3) = -1.
Rank7Inputs rank7_inputs(bool literal_b3 = false);

struct ExactConstruction {
  /// tau(b_k) over the embedding, tau = sum_psi m_psi psi.
  std::vector<QSqrt5> tau;
  bool tau_consistent = false;  // tau(b_k) = n [k = 0]
  bool gram_diagonal = false;
  bool reconstruction_exact = false;
  std::vector<QSqrt5> lambda;  // r^3 entries
  std::vector<std::size_t> star;
  std::vector<QSqrt5> delta;
};

/// Embeds each basis element as (delta, phi, psi, X) in R x R x R x H and
/// recovers the structure constants from the trace form, exactly.
ExactConstruction construct_from_embedding(const Rank7Inputs& in);

struct ExactAxiomReport {
  bool identity = false;
  bool anti_automorphism = false;
  bool pseudo_inverse = false;
  bool associativity = false;
  bool degree_homomorphism = false;
  bool standard = false;
  bool all_rational = false;

  bool ok() const {
    return identity && anti_automorphism && pseudo_inverse && associativity && degree_homomorphism && standard;
  }
};

ExactAxiomReport verify_exact(const ExactConstruction& c);

/// The example as a float-mode RBA (its structure constants lie in Q(sqrt5)).
/// Throws contract_violation if the exact construction fails any check.
Rba build_rank7_example();

/// The H-valued *-representation of the example in double precision.
std::vector<Quaternion<double>> rank7_quaternion_images();

}  // namespace rba
