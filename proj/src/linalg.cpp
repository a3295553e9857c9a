#include "crosslap/linalg.hpp"

#include <algorithm>

#include <lapacke.h>

#include "crosslap/error.hpp"

namespace crosslap::linalg {

Eigen::VectorXd singular_values(Eigen::MatrixXd a) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  if (m == 0 || n == 0) return Eigen::VectorXd(0);
  Eigen::VectorXd s(std::min(m, n));
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, a.data(), m, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw EigenFailureError("dgesdd failed", static_cast<int>(info), 0);
  return s;
}

std::size_t numerical_rank(const Eigen::MatrixXd& a, const RankOptions& options) {
  const Eigen::VectorXd s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double threshold = options.tau * s(0);
  const double lo = threshold / options.band_factor;
  const double hi = threshold * options.band_factor;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > lo && s(i) < hi) throw RankAmbiguousError(s(i), lo, hi);
    if (s(i) >= threshold) ++rank;
  }
  return rank;
}

SymmetricEigen symmetric_eigen(Eigen::MatrixXd a, bool want_vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  SymmetricEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n, a.data(), n, out.values.data());
  if (info != 0) throw EigenFailureError("dsyevd did not converge", static_cast<int>(info), 0);
  if (want_vectors) out.vectors = std::move(a);
  return out;
}

}  // namespace crosslap::linalg
