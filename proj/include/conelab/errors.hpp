#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conelab {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  ParseError,
  NotPointed,
  NotGenerating,
  NotInCone,
  NotComparable,
  NotOrderUnit,
  InternalInconsistency,
  UndefinedLattice,
  RayIsEngaged,
  NotConeMap,
  NotSimplicial,
  MapCountMismatch,
  OutOfDomain,
  NotExtreme,
  SameRay,
  NotColinear,
  DegenerateSpan,
  NotUnit,
  NotPositiveDefinite,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that callers (and
/// the CLI exit-code table) can dispatch without parsing messages.
class ConeError : public std::runtime_error {
 public:
  ConeError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw ConeError(kind, what);
}

}  // namespace conelab
