#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "crosslap/core/bicomplex.hpp"
#include "crosslap/linalg.hpp"

namespace crosslap {

/// (beta^1_{k,l}, beta^2_{k,l}): dimensions of the top and bottom cross-homology.
struct BettiVector {
  std::size_t top = 0;
  std::size_t bottom = 0;
  bool operator==(const BettiVector&) const = default;
};

struct BettiOptions {
  linalg::RankOptions rank{};
  /// Also count Laplacian nullities and compare with rank-nullity.
  bool cross_check = true;
  double tol_zero = 1e-8;
};

struct BettiResult {
  BettiVector value;
  /// Set when cross_check ran: true iff both routes agree.
  std::optional<bool> routes_agree;
  std::optional<BettiVector> laplacian_nullity;
};

/// Cross-Betti vector at (k,l) by rank-nullity on the boundary matrices.
BettiResult betti_vector(const Bicomplex& x, int k, int l, const BettiOptions& options = {});

/// Grades of the standard cross-Betti table.
std::vector<Grade> default_betti_grades();

using BettiTable = std::map<std::pair<int, int>, std::map<Grade, BettiVector>>;

/// Betti vectors for each stored layer pair of the multicomplex.
BettiTable cross_betti_table(const Multicomplex& m, const std::vector<Grade>& grades = default_betti_grades(),
                             const BettiOptions& options = {});

}  // namespace crosslap
