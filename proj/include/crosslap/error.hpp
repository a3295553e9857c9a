#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crosslap {

enum class ErrorKind {
  DegenerateSimplex,
  EmptySimplex,
  InvalidWeight,
  UnknownVertex,
  UnknownSimplex,
  GradeMismatch,
  RankAmbiguous,
  EmptyGrade,
  EigenFailure,
  UnsupportedGrade,
  SpectrumUnavailable,
  SameLayer,
  UnknownLayer,
  ParseError,
  SelfLoop,
  EmptyReport,
  InvalidBicomplex,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is
/// stable and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a singular value falls inside the band around the rank
/// threshold, so the numerical rank cannot be decided.
class RankAmbiguousError : public Error {
 public:
  RankAmbiguousError(double sigma, double band_low, double band_high);

  double sigma() const noexcept { return sigma_; }
  double band_low() const noexcept { return band_low_; }
  double band_high() const noexcept { return band_high_; }

 private:
  double sigma_;
  double band_low_;
  double band_high_;
};

class EigenFailureError : public Error {
 public:
  EigenFailureError(const std::string& what, int info, std::size_t iterations);

  int info() const noexcept { return info_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  int info_;
  std::size_t iterations_;
};

/// Input file errors carry the 1-based line number (0 when not line-bound).
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace crosslap
