#pragma once

#include <stdexcept>
#include <string>

namespace hyperbent {

// Failure modes the library promises to detect and report.
enum class errc {
  degree_out_of_range,
  not_irreducible,
  field_mismatch,
  not_a_divisor,
  odd_degree,
  exponent_not_coprime,
  odd_n,
  hypothesis_violated,
  invalid_spec,
  degenerate_u0,
  singular_denominator,
  bad_m,
  p_not_coprime,
  coefficient_not_in_subfield,
  parse_error,
  space_too_large,
  internal_check_failed,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace hyperbent
