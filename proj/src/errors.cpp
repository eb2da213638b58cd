#include "nfv/errors.hpp"

namespace nfv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::DivergentParameters: return "DivergentParameters";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SlowDecay: return "SlowDecay";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::OutOfTableRange: return "OutOfTableRange";
    case ErrorKind::ContinuationUnavailable: return "ContinuationUnavailable";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::MultiplicativityViolation: return "MultiplicativityViolation";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ConfluentParameters: return "ConfluentParameters";
    case ErrorKind::UnsupportedMultiplicity: return "UnsupportedMultiplicity";
    case ErrorKind::MarginalConvergence: return "MarginalConvergence";
    case ErrorKind::BelowCrossover: return "BelowCrossover";
    case ErrorKind::SingularParameter: return "SingularParameter";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace nfv
