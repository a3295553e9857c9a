#include "crosslap/homology/betti.hpp"

#include "crosslap/homology/chains.hpp"
#include "crosslap/spectral/laplacian.hpp"

namespace crosslap {

namespace {

std::size_t rank_of(const Bicomplex& x, Grade g, Side side, const linalg::RankOptions& options) {
  if (g.k < -1 || g.l < -1 || x.grade(g).empty()) return 0;
  const auto b = boundary_matrix(x, g.k, g.l, side);
  if (b.entries.empty()) return 0;
  return linalg::numerical_rank(b.dense(), options);
}

std::size_t homology_dimension(const Bicomplex& x, Grade g, Side side, const linalg::RankOptions& options) {
  const std::size_t n = x.grade(g).size();
  const std::size_t nullity = n - rank_of(x, g, side, options);
  return nullity - rank_of(x, up_grade(g, side), side, options);
}

std::size_t laplacian_nullity(const Bicomplex& x, Grade g, Side side, double tol_zero) {
  if (x.grade(g).empty()) return 0;
  const Laplacian lap = laplacian(x, g.k, g.l, side);
  const auto spectrum = linalg::symmetric_eigen(lap.symmetric_dense(), false);
  const double scale = std::max(1.0, spectrum.values.maxCoeff());
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < spectrum.values.size(); ++i) {
    if (spectrum.values(i) <= tol_zero * scale) ++count;
  }
  return count;
}

}  // namespace

BettiResult betti_vector(const Bicomplex& x, int k, int l, const BettiOptions& options) {
  const Grade g{k, l};
  BettiResult result;
  result.value.top = homology_dimension(x, g, Side::Top, options.rank);
  result.value.bottom = homology_dimension(x, g, Side::Bottom, options.rank);
  if (options.cross_check) {
    BettiVector nullity{laplacian_nullity(x, g, Side::Top, options.tol_zero),
                        laplacian_nullity(x, g, Side::Bottom, options.tol_zero)};
    result.routes_agree = nullity == result.value;
    result.laplacian_nullity = nullity;
  }
  return result;
}

std::vector<Grade> default_betti_grades() { return {{0, -1}, {1, -1}, {-1, 0}, {-1, 1}, {0, 0}}; }

BettiTable cross_betti_table(const Multicomplex& m, const std::vector<Grade>& grades, const BettiOptions& options) {
  BettiTable table;
  for (const auto& [s, t] : m.pairs()) {
    const Bicomplex x = m.get(s, t);
    auto& column = table[{s, t}];
    for (const auto& g : grades) column[g] = betti_vector(x, g.k, g.l, options).value;
  }
  return table;
}

}  // namespace crosslap
