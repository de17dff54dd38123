#include "hill/error.hpp"

namespace hill {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateIndex: return "DuplicateIndex";
    case Errc::OddIndex: return "OddIndex";
    case Errc::ZeroIndex: return "ZeroIndex";
    case Errc::InsufficientCoefficients: return "InsufficientCoefficients";
    case Errc::BcMismatch: return "BcMismatch";
    case Errc::EigenvalueOnContour: return "EigenvalueOnContour";
    case Errc::TruncationTooSmall: return "TruncationTooSmall";
    case Errc::IndexOutOfBasis: return "IndexOutOfBasis";
    case Errc::TooFewRecords: return "TooFewRecords";
    case Errc::CutoffTooSmall: return "CutoffTooSmall";
    case Errc::BranchAmbiguity: return "BranchAmbiguity";
    case Errc::RegimeNotReached: return "RegimeNotReached";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Config: return "ConfigError";
    case Errc::Io: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace hill
