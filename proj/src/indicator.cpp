#include "rba/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "rba/error.hpp"

namespace rba {

std::string_view to_string(IndicatorPattern p) {
  switch (p) {
    case IndicatorPattern::all_plus: return "all-plus";
    case IndicatorPattern::has_zero: return "has-zero";
    case IndicatorPattern::has_minus: return "has-minus";
  }
  return "unknown";
}

namespace {

bool exact_inputs(const Character& psi, const Rba& rba, const DegreeMap& dm) {
  return rba.is_exact() && psi.is_exact() && dm.order.is_exact() &&
         std::all_of(dm.values.begin(), dm.values.end(), [](const auto& v) { return v.is_exact(); });
}

}  // namespace

std::vector<IndicatorValue> fs_indicator(const CharacterTable& table, const Rba& rba,
                                         const DegreeMap& dm, const ToleranceConfig& tol) {
  const std::size_t r = rba.rank();
  std::vector<IndicatorValue> out;
  for (const auto& psi : table.rows) {
    IndicatorValue v;
    if (exact_inputs(psi, rba, dm)) {
      Rational sum = 0;
      for (std::size_t i = 0; i < r; ++i) {
        Rational sq = 0;
        for (std::size_t k = 0; k < r; ++k) sq += rba.lambda(i, i, k).exact() * *psi.exact_values[k];
        sum += sq / dm.values[i].exact();
      }
      const Rational raw = *psi.exact_multiplicity / (dm.order.exact() * Rational(psi.degree)) * sum;
      if (raw != -1 && raw != 0 && raw != 1) {
        throw Error(ErrorCode::indicator_out_of_range,
                    "indicator out of range: exact value " + rational_to_string(raw));
      }
      v.raw = to_double(raw);
      v.nu = static_cast<int>(raw.convert_to<double>());
      v.exact = true;
    } else {
      std::complex<double> sum = 0.0;
      for (std::size_t i = 0; i < r; ++i) {
        std::complex<double> sq = 0.0;
        for (std::size_t k = 0; k < r; ++k) sq += rba.lambda_d(i, i, k) * psi.values[static_cast<Eigen::Index>(k)];
        sum += sq / dm[i];
      }
      const std::complex<double> raw =
          psi.multiplicity / (dm.order.to_double() * psi.degree) * sum;
      const double nearest = std::clamp(std::round(raw.real()), -1.0, 1.0);
      const double dev = std::abs(raw - nearest);
      if (dev > tol.eps_residual) {
        throw Error(ErrorCode::indicator_out_of_range,
                    "indicator out of range: raw value " + format_double(raw.real()) + " + " +
                        format_double(raw.imag()) + "i");
      }
      v.raw = raw.real();
      v.nu = static_cast<int>(nearest);
    }
    out.push_back(v);
  }
  return out;
}

IndicatorReport indicator_report(CharacterTable& table, const Rba& rba, const DegreeMap& dm,
                                 const ToleranceConfig& tol) {
  const auto values = fs_indicator(table, rba, dm, tol);
  IndicatorReport rep;
  bool any_zero = false, any_minus = false;
  for (std::size_t c = 0; c < values.size(); ++c) {
    const auto& v = values[c];
    table.rows[c].nu = v.nu;
    rep.nu.push_back(v.nu);
    rep.raw.push_back(v.raw);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(v.raw - v.nu));
    const long deg = table.rows[c].degree;
    rep.s_predicted += v.nu * deg;
    rep.degree_square_sum += deg * deg;
    any_zero = any_zero || v.nu == 0;
    any_minus = any_minus || v.nu == -1;
  }
  rep.s_actual = static_cast<long>(rba.real_count());
  rep.pattern = any_minus  ? IndicatorPattern::has_minus
                : any_zero ? IndicatorPattern::has_zero
                           : IndicatorPattern::all_plus;
  return rep;
}

bool real_count_check(const IndicatorReport& report) {
  return report.s_predicted == report.s_actual;
}

bool gap_identity_check(const IndicatorReport& report, std::size_t rank) {
  return report.degree_square_sum - report.s_predicted ==
         static_cast<long>(rank) - report.s_actual;
}

OnePairVerdict classify_one_pair(const Rba& rba, const CharacterTable& table,
                                 const IndicatorReport& report, const ToleranceConfig& tol) {
  const auto pairs = rba.nonreal_pairs();
  if (pairs.size() != 1) {
    throw Error(ErrorCode::precondition,
                "expected exactly one nonreal pair, found " + std::to_string(pairs.size()));
  }
  if (rba.is_commutative(tol)) throw Error(ErrorCode::precondition, "algebra is commutative");

  OnePairVerdict verdict{0, pairs.front().first, pairs.front().second};
  std::size_t big = 0;
  for (std::size_t c = 0; c < table.size(); ++c) {
    if (table[c].degree > 1) {
      ++big;
      verdict.chi_index = c;
    }
  }
  if (big != 1) {
    throw Error(ErrorCode::lemma_violation,
                std::to_string(big) + " characters of degree > 1 (expected exactly one)");
  }
  if (table[verdict.chi_index].degree != 2) {
    throw Error(ErrorCode::lemma_violation, "the nonlinear character does not have degree 2");
  }
  if (!std::all_of(report.nu.begin(), report.nu.end(), [](int v) { return v == 1; })) {
    throw Error(ErrorCode::lemma_violation, "some indicator differs from +1");
  }
  return verdict;
}

int rank7_class_for_pattern(std::span<const int> nu) {
  if (nu.size() != 4 || nu[0] != 1) {
    throw Error(ErrorCode::precondition, "rank-7 pattern needs four indicators starting with nu(delta) = 1");
  }
  if (nu[1] == 1 && nu[2] == 1 && nu[3] == 1) return 5;
  if (nu[1] == 0 && nu[2] == 0 && nu[3] == 1) return 3;
  if (nu[1] == 1 && nu[2] == 1 && nu[3] == -1) return 1;
  throw Error(ErrorCode::contract_violation, "indicator pattern is not one of the three rank-7 classes");
}

int rank7_trichotomy(const Rba& rba, const CharacterTable& table, const IndicatorReport& report) {
  if (rba.rank() != 7) throw Error(ErrorCode::precondition, "rank is not 7");
  std::vector<int> degrees;
  for (const auto& c : table.rows) degrees.push_back(c.degree);
  if (degrees != std::vector<int>{1, 1, 1, 2}) {
    throw Error(ErrorCode::precondition, "degrees are not (1,1,1,2)");
  }
  const int cls = rank7_class_for_pattern(report.nu);
  if (cls != report.s_actual) {
    throw Error(ErrorCode::contract_violation,
                "indicator pattern predicts " + std::to_string(cls) + " real elements, found " +
                    std::to_string(report.s_actual));
  }
  return cls;
}

}  // namespace rba
