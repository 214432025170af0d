#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hamspec {

enum class ErrorKind {
  kDimension,
  kDomain,
  kParity,
  kClosure,
  kStructure,
  kRank,
  kNotEigenvalue,
  kEigenpair,
  kConvergence,
  kSize,
  kBracket,
  kHypothesis,
  kPrecondition,
  kInconsistency,
  kParse,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. The kind drives the CLI exit code:
/// kParse and kIo map to 2, everything else to 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hamspec
