#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polyq {

/**
 * Input or contract violation carrying a stable machine-readable code.
 *
 * Codes in use: "unbounded", "empty_interior", "redundant_facet",
 * "malformed_scalar", "bad_input", "exact_field_required",
 * "infeasible_point", "not_on_level_set", "unknown_zero_pattern",
 * "regular_face", "rank_mismatch", "io_error", "usage".
 */
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace polyq
