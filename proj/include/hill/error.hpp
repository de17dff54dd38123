#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hill {

enum class Errc {
  DuplicateIndex,
  OddIndex,
  ZeroIndex,
  InsufficientCoefficients,
  BcMismatch,
  EigenvalueOnContour,
  TruncationTooSmall,
  IndexOutOfBasis,
  TooFewRecords,
  CutoffTooSmall,
  BranchAmbiguity,
  RegimeNotReached,
  InvalidArgument,
  Config,
  Io,
};

std::string_view to_string(Errc code);

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hill
