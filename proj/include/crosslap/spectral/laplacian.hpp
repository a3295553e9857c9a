#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "crosslap/core/bicomplex.hpp"
#include "crosslap/homology/chains.hpp"

namespace crosslap {

/// Top (part Top, "T") or bottom (part Bottom, "B") (k,l)-cross-Laplacian.
///
/// `matrix` is the operator in the elementary basis e_a. For non-unit
/// weights it is self-adjoint for the weighted inner product but not
/// symmetric as a matrix; `symmetric_dense()` gives the similar symmetric
/// matrix W^{1/2} L W^{-1/2}, i.e. the operator in the orthonormal basis
/// e_a / sqrt(w(a)). Both coincide for unit weights.
struct Laplacian {
  Grade grade;
  Side part = Side::Top;
  ChainBasis basis;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd weights;  // w(a) per basis cell

  std::size_t size() const { return basis.size(); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
  Eigen::MatrixXd symmetric_dense() const;
  Eigen::SparseMatrix<double> symmetric_sparse() const;
};

/// Entry-by-entry assembly from crossface incidences:
///   diagonal       deg_TO(a)/w(a) + w(a) deg_TI(a)
///   shared parent  sgn(a,dc) sgn(b,dc) w(c)/w(a)
///   shared face    sgn(d,da) sgn(d,db) w(b)/w(d)
/// (bottom analogue for part Bottom). Throws EmptyGrade for an empty grade.
Laplacian laplacian(const Bicomplex& x, int k, int l, Side part);

/// Same operator from explicit boundary matrices and weight diagonals:
///   W_k^{-1} B_up W_up B_up^T + B_down^T W_down^{-1} B_down W_k.
/// Kept as an independent assembly route for cross-checking.
Laplacian laplacian_from_boundaries(const Bicomplex& x, int k, int l, Side part);

}  // namespace crosslap
