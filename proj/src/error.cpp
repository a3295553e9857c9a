#include "crosslap/error.hpp"

#include <sstream>

namespace crosslap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::EmptySimplex: return "EmptySimplex";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownSimplex: return "UnknownSimplex";
    case ErrorKind::GradeMismatch: return "GradeMismatch";
    case ErrorKind::RankAmbiguous: return "RankAmbiguous";
    case ErrorKind::EmptyGrade: return "EmptyGrade";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::UnsupportedGrade: return "UnsupportedGrade";
    case ErrorKind::SpectrumUnavailable: return "SpectrumUnavailable";
    case ErrorKind::SameLayer: return "SameLayer";
    case ErrorKind::UnknownLayer: return "UnknownLayer";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::EmptyReport: return "EmptyReport";
    case ErrorKind::InvalidBicomplex: return "InvalidBicomplex";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {
std::string rank_message(double sigma, double lo, double hi) {
  std::ostringstream os;
  os << "singular value " << sigma << " inside ambiguity band (" << lo << ", " << hi << ")";
  return os.str();
}
}  // namespace

RankAmbiguousError::RankAmbiguousError(double sigma, double band_low, double band_high)
    : Error(ErrorKind::RankAmbiguous, rank_message(sigma, band_low, band_high)),
      sigma_(sigma),
      band_low_(band_low),
      band_high_(band_high) {}

EigenFailureError::EigenFailureError(const std::string& what, int info, std::size_t iterations)
    : Error(ErrorKind::EigenFailure, what + " (info=" + std::to_string(info) +
                                         ", iterations=" + std::to_string(iterations) + ")"),
      info_(info),
      iterations_(iterations) {}

ParseError::ParseError(ErrorKind kind, std::size_t line, const std::string& message)
    : Error(kind, line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

}  // namespace crosslap
