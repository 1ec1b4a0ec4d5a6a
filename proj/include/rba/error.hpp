#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rba {

/// Machine-readable failure categories surfaced by every module and the CLI.
enum class ErrorCode {
  structural,               // malformed tensor / permutation / dimensions
  parse,                    // unreadable input file
  invalid_input,            // input violates a documented precondition
  precondition,             // operation not applicable to this algebra
  no_positive_degree_map,
  degree_map_inconsistent,
  center_rank_ambiguous,
  idempotent_separation_failed,
  multiplicity_inconsistency,
  indicator_out_of_range,
  extraction_failed,
  not_positive_definite,
  contract_violation,       // a result breaks an invariant it must satisfy
  lemma_violation,          // a table contradicts a proven structural lemma
  domain,                   // bad arithmetic argument (zero Hilbert argument etc.)
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Input and contract errors map to CLI exit code 2.
  bool is_input_error() const noexcept {
    return code_ == ErrorCode::structural || code_ == ErrorCode::parse ||
           code_ == ErrorCode::invalid_input || code_ == ErrorCode::precondition ||
           code_ == ErrorCode::domain;
  }

 private:
  ErrorCode code_;
};

}  // namespace rba
