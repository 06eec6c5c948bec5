#pragma once

#include <stdexcept>
#include <string>

namespace kforms {

enum class errc {
  modulus_too_small,
  not_a_unit,
  length_mismatch,
  index_out_of_range,
  k_out_of_range,
  budget_exceeded,
  r_unsupported,
  dimension_too_large,
  invalid_grid,
  insufficient_points,
  nonpositive_value,
  invalid_argument,
  io_error,
};

const char* errc_name(errc code) noexcept;

// All library failures are reported through this exception type; the CLI maps
// it onto exit codes.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace kforms
