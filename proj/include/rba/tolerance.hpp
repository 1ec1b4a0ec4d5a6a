#pragma once

#include <cstdint>

namespace rba {

struct ToleranceConfig {
  double eps_zero = 1e-9;
  /// Relative gap below which eigenvalues are merged; also the rank threshold.
  double eps_cluster = 1e-6;
  /// Bound on residuals of matrix identities.
  double eps_residual = 1e-8;
  std::uint64_t rng_seed = 0;

  /// Throws Error(invalid_input) unless all tolerances are positive and
  /// eps_zero <= eps_cluster.
  void check() const;
};

}  // namespace rba
