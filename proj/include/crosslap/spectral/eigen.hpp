#pragma once

#include <Eigen/Dense>

#include "crosslap/spectral/laplacian.hpp"

namespace crosslap {

struct EigOptions {
  /// Relative gap (times max(1, lambda_max)) under which eigenvalues form one group.
  double tol_group = 1e-9;
  /// Kernel threshold (times max(1, lambda_max)).
  double tol_zero = 1e-8;
  /// Largest size decomposed densely; bigger Laplacians only get their
  /// kernel and lambda_max eigenspaces, through deflated Lanczos.
  std::size_t dense_limit = 4000;
  /// Replace each degenerate group's basis by the canonical one.
  bool canonicalize = true;
  /// Upper bound on kernel vectors collected by the iterative path.
  std::size_t iterative_kernel_cap = 512;
};

/// Eigenpairs of the symmetric form of a Laplacian, ascending.
///
/// Vectors are orthonormal columns aligned with `values`. Within a group of
/// equal eigenvalues the basis is canonical (Gram-Schmidt of the projector
/// columns taken in basis order), and every vector has its largest-magnitude
/// coordinate positive (lowest index on ties). When `full_spectrum` is false
/// only the kernel group and the lambda_max group are present.
struct EigenDecomposition {
  Grade grade;
  Side part = Side::Top;
  ChainBasis basis;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  bool full_spectrum = true;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  double lambda_max() const { return values.size() ? values(values.size() - 1) : 0.0; }
};

/// Throws EigenFailureError when the solver does not converge and
/// SpectrumUnavailable when the iterative kernel exceeds its cap.
EigenDecomposition eig(const Laplacian& lap, const EigOptions& options = {});

/// Canonical orthonormal basis of span(block): Gram-Schmidt applied to the
/// projector columns P e_0, P e_1, ... in order.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& block);

/// Flips each column so its largest-magnitude coordinate is positive.
void normalize_signs(Eigen::MatrixXd& vectors);

}  // namespace crosslap
