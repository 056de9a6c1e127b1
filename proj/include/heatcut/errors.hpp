#pragma once

#include <stdexcept>
#include <string>

namespace heatcut {

enum class Errc {
  parse_error,
  isolated_state,
  not_irreducible,
  no_convergence,
  eigensolver_failure,
  zero_function,
  empty_set,
  too_large,
  bad_range,
  certificate_fails,
  precondition_fails,
  gamma_out_of_range,
  negative_input,
  no_feasible_threshold,
  guarantee_violation,
};

/// All library failures are reported through this type; code() lets callers
/// (in particular the CLI) distinguish bad inputs from internal bugs.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

  /// True for errors caused by the input or requested parameters, false for
  /// violations of invariants the library itself is supposed to maintain.
  bool is_input_error() const noexcept {
    switch (code_) {
      case Errc::guarantee_violation:
      case Errc::no_feasible_threshold:
      case Errc::eigensolver_failure:
        return false;
      default:
        return true;
    }
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace heatcut
