#include "crosslap/spectral/laplacian.hpp"

#include <map>

#include "crosslap/error.hpp"

namespace crosslap {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Laplacian empty_shell(const Bicomplex& x, int k, int l, Side part) {
  Laplacian lap;
  lap.grade = {k, l};
  lap.part = part;
  lap.basis = ChainBasis(x, lap.grade);
  if (lap.basis.empty()) {
    throw Error(ErrorKind::EmptyGrade, "grade " + to_string(lap.grade) + " has no crossimplices");
  }
  const auto n = static_cast<Eigen::Index>(lap.basis.size());
  lap.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) lap.weights(i) = x.weight(lap.basis[static_cast<std::size_t>(i)]);
  lap.matrix.resize(n, n);
  return lap;
}

Eigen::SparseMatrix<double> diagonal(const Bicomplex& x, const ChainBasis& basis, bool inverse) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::SparseMatrix<double> d(n, n);
  Triplets t;
  t.reserve(basis.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = x.weight(basis[static_cast<std::size_t>(i)]);
    t.emplace_back(static_cast<int>(i), static_cast<int>(i), inverse ? 1.0 / w : w);
  }
  d.setFromTriplets(t.begin(), t.end());
  return d;
}

}  // namespace

Eigen::MatrixXd Laplacian::symmetric_dense() const { return Eigen::MatrixXd(symmetric_sparse()); }

Eigen::SparseMatrix<double> Laplacian::symmetric_sparse() const {
  Eigen::SparseMatrix<double> s = matrix;
  for (int col = 0; col < s.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(s, col); it; ++it) {
      it.valueRef() *= std::sqrt(weights(it.row()) / weights(it.col()));
    }
  }
  return s;
}

Laplacian laplacian(const Bicomplex& x, int k, int l, Side part) {
  Laplacian lap = empty_shell(x, k, l, part);
  const ChainBasis& basis = lap.basis;
  const Grade grade{k, l};
  Triplets t;

  // Outer part: every parent c contributes to all pairs of its crossfaces on `part`.
  for (const auto& c : x.grade(up_grade(grade, part))) {
    const double wc = x.weight(c);
    std::vector<std::pair<std::size_t, int>> faces;
    for (const auto& f : crossfaces(c, part)) {
      if (auto i = basis.index_of(f.face)) faces.emplace_back(*i, f.sign);
    }
    for (const auto& [i, si] : faces) {
      const double wa = lap.weights(static_cast<Eigen::Index>(i));
      for (const auto& [j, sj] : faces) {
        t.emplace_back(static_cast<int>(i), static_cast<int>(j), si * sj * wc / wa);
      }
    }
  }

  // Inner part: cells sharing a crossface d on `part`.
  std::map<Crossimplex, std::vector<std::pair<std::size_t, int>>> star;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& f : crossfaces(basis[i], part)) star[f.face].emplace_back(i, f.sign);
  }
  for (const auto& [d, members] : star) {
    const double wd = x.weight(d);
    for (const auto& [i, si] : members) {
      for (const auto& [j, sj] : members) {
        t.emplace_back(static_cast<int>(i), static_cast<int>(j),
                       si * sj * lap.weights(static_cast<Eigen::Index>(j)) / wd);
      }
    }
  }

  lap.matrix.setFromTriplets(t.begin(), t.end());
  lap.matrix.prune(0.0);
  return lap;
}

Laplacian laplacian_from_boundaries(const Bicomplex& x, int k, int l, Side part) {
  Laplacian lap = empty_shell(x, k, l, part);
  const Grade grade{k, l};
  const Grade up = up_grade(grade, part);
  const auto b_up = boundary_matrix(x, up.k, up.l, part);
  const auto b_down = boundary_matrix(x, k, l, part);

  const auto w_inv = diagonal(x, lap.basis, true);
  const auto w = diagonal(x, lap.basis, false);
  Eigen::SparseMatrix<double> result(w.rows(), w.cols());
  if (b_up.col_count() > 0) {
    const auto bu = b_up.sparse();
    result += Eigen::SparseMatrix<double>(w_inv * bu * diagonal(x, b_up.cols, false) * Eigen::SparseMatrix<double>(bu.transpose()));
  }
  if (b_down.row_count() > 0) {
    const auto bd = b_down.sparse();
    result += Eigen::SparseMatrix<double>(Eigen::SparseMatrix<double>(bd.transpose()) * diagonal(x, b_down.rows, true) * bd * w);
  }
  lap.matrix = result;
  lap.matrix.prune(0.0);
  return lap;
}

}  // namespace crosslap
