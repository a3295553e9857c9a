#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "crosslap/io/formats.hpp"

namespace crosslap::io {

enum class Command { Betti, Laplacian, Spectrum, Hubs, Persist, Diffuse };
enum class InputKind { Bicomplex, Multiplex };
enum class StageSelect { Zero, Max, All };

struct RunConfig {
  Command command = Command::Betti;
  std::filesystem::path input;
  InputKind kind = InputKind::Bicomplex;
  std::optional<std::filesystem::path> labels;  // multiplex label file
  Grade grade{0, 0};
  Side part = Side::Top;
  StageSelect stage = StageSelect::All;
  /// Only this ordered pair for `diffuse`; all pairs when unset.
  std::optional<std::pair<int, int>> layer_pair;
  std::size_t top_n = 10;
  /// Unset means $CROSSLAP_TOL_ZERO or the library default.
  std::optional<double> tol_zero;
  std::optional<double> tol_group;
  IntensityRule rule = IntensityRule::MaxAbs;
  bool use_weights = false;
  std::size_t jobs = 1;
  std::filesystem::path output_dir = ".";
  /// Subset of {"csv", "json", "svg"}; empty means every format the command emits.
  std::set<std::string> formats;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Effective spectral options after flags and the environment.
SpectralOptions resolve_spectral_options(const RunConfig& config);

/// Runs one command. Reports are assembled in memory and written only when
/// everything succeeded. Returns 0 on success; errors are described on
/// `err` and mapped to: 2 configuration, 3 input, 4 computation, 5 output.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace crosslap::io
