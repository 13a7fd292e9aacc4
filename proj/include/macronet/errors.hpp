#pragma once

#include <stdexcept>
#include <string>

namespace macronet {

/// Stable error identifiers; the CLI maps categories to exit codes.
enum class errc {
  // input / parsing
  parse_error,
  config_error,
  // data shape
  empty_intersection,
  non_positive_price,
  too_short,
  too_few_nodes,
  too_few_observations,
  entity_mismatch,
  unknown_entity,
  name_mismatch,
  invalid_params,
  invalid_df,
  // numeric
  degenerate_variance,
  no_convergence,
  degenerate_dominant_pair,
  rank_deficient,
  no_within_variation,
  under_identified,
  near_singular_design,
  internal_error,
};

const char* errc_name(errc code) noexcept;

/// Exit-code category per the CLI contract: 2 parse, 3 numeric, 4 config.
int errc_exit_code(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace macronet
