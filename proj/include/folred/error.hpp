#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace folred {

// Stable machine-readable failure categories. Numeric values are part of the
// C API (see folred.h) and must not be renumbered.
enum class ErrorCode : int {
  ok = 0,
  parse = 1,
  precondition = 2,
  context_mismatch = 3,
  non_isolated = 4,
  identical_foliations = 5,
  non_reduced = 6,
  depth_limit = 7,
  insufficient_order = 8,
  unresolved_locus = 9,
  inconclusive = 10,
  not_a_symmetry = 11,
  internal = 12,
  io = 13,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace folred
