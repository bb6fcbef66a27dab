#ifndef STABLECUT_ERROR_HPP
#define STABLECUT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace stablecut {

enum class ErrorKind {
  InvalidInstance,
  InvalidCut,
  InvalidSubset,
  InvalidMerge,
  InvalidPerturbation,
  DegenerateInstance,
  SizeLimit,
  InvalidParameter,
  Precondition,
  InvariantViolation,
  SolverFailed,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stablecut

#endif  // STABLECUT_ERROR_HPP
