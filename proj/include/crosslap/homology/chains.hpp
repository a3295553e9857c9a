#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "crosslap/core/bicomplex.hpp"

namespace crosslap {

/// Ordered elementary basis of the (k,l)-chains: the grade's cells in
/// lexicographic (top, bottom) order.
class ChainBasis {
 public:
  ChainBasis() = default;
  ChainBasis(const Bicomplex& x, Grade g);

  Grade grade() const { return grade_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const Crossimplex& operator[](std::size_t i) const { return cells_[i]; }
  const std::vector<Crossimplex>& cells() const { return cells_; }
  std::optional<std::size_t> index_of(const Crossimplex& a) const;

 private:
  Grade grade_;
  std::vector<Crossimplex> cells_;
};

/// Boundary or coboundary matrix over two chain bases. Entries are unique
/// per (row, col), non-zero, and sorted column-major.
struct SignedSparseMatrix {
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
    bool operator==(const Entry&) const = default;
  };

  ChainBasis rows;
  ChainBasis cols;
  std::vector<Entry> entries;

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return cols.size(); }
  /// Value at (r, c); 0 when absent.
  double at(std::size_t r, std::size_t c) const;
  Eigen::MatrixXd dense() const;
  Eigen::SparseMatrix<double> sparse() const;
  SignedSparseMatrix transposed() const;
};

/// Matrix of the top (side Top) or bottom (side Bottom) cross-boundary out of
/// grade (k,l). Column a carries sgn(b, da) at each crossface b.
SignedSparseMatrix boundary_matrix(const Bicomplex& x, int k, int l, Side side);

/// Coboundary out of grade (k,l) in the elementary basis: the transpose of
/// the boundary into (k,l) from (k+1,l) [Top] or (k,l+1) [Bottom].
SignedSparseMatrix coboundary_matrix(const Bicomplex& x, int k, int l, Side side);

/// Source grade of the boundary that lands in g on the given side.
inline Grade up_grade(Grade g, Side side) {
  return side == Side::Top ? Grade{g.k + 1, g.l} : Grade{g.k, g.l + 1};
}

/// Target grade of the boundary leaving g on the given side.
inline Grade down_grade(Grade g, Side side) {
  return side == Side::Top ? Grade{g.k - 1, g.l} : Grade{g.k, g.l - 1};
}

}  // namespace crosslap
