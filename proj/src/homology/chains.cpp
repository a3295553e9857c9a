#include "crosslap/homology/chains.hpp"

#include <algorithm>
#include <tuple>

namespace crosslap {

ChainBasis::ChainBasis(const Bicomplex& x, Grade g) : grade_(g) {
  if (g.k >= -1 && g.l >= -1) {
    const auto cells = x.grade(g);
    cells_.assign(cells.begin(), cells.end());
  }
}

std::optional<std::size_t> ChainBasis::index_of(const Crossimplex& a) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), a);
  if (it == cells_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - cells_.begin());
}

double SignedSparseMatrix::at(std::size_t r, std::size_t c) const {
  for (const auto& e : entries) {
    if (e.row == r && e.col == c) return e.value;
  }
  return 0.0;
}

Eigen::MatrixXd SignedSparseMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(row_count()),
                                            static_cast<Eigen::Index>(col_count()));
  for (const auto& e : entries) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  return m;
}

Eigen::SparseMatrix<double> SignedSparseMatrix::sparse() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(row_count()), static_cast<Eigen::Index>(col_count()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

SignedSparseMatrix SignedSparseMatrix::transposed() const {
  SignedSparseMatrix t{cols, rows, {}};
  t.entries.reserve(entries.size());
  for (const auto& e : entries) t.entries.push_back({e.col, e.row, e.value});
  std::sort(t.entries.begin(), t.entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.col, a.row) < std::tie(b.col, b.row); });
  return t;
}

SignedSparseMatrix boundary_matrix(const Bicomplex& x, int k, int l, Side side) {
  const Grade source{k, l};
  SignedSparseMatrix m{ChainBasis(x, down_grade(source, side)), ChainBasis(x, source), {}};
  for (std::size_t col = 0; col < m.cols.size(); ++col) {
    std::vector<SignedSparseMatrix::Entry> column;
    for (const auto& f : crossfaces(m.cols[col], side)) {
      // Faces outside the bicomplex only occur for unclosed inputs; skip them.
      if (auto row = m.rows.index_of(f.face)) column.push_back({*row, col, static_cast<double>(f.sign)});
    }
    std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
    m.entries.insert(m.entries.end(), column.begin(), column.end());
  }
  return m;
}

SignedSparseMatrix coboundary_matrix(const Bicomplex& x, int k, int l, Side side) {
  const Grade up = up_grade({k, l}, side);
  return boundary_matrix(x, up.k, up.l, side).transposed();
}

}  // namespace crosslap
