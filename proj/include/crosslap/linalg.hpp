#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace crosslap::linalg {

/// Singular values in descending order (LAPACK dgesdd, no vectors).
Eigen::VectorXd singular_values(Eigen::MatrixXd a);

struct RankOptions {
  double tau = 1e-10;          // sigma >= tau * sigma_max counts toward the rank
  double band_factor = 1e2;    // (tau / f, tau * f) is the ambiguity band
};

/// Numerical rank; throws RankAmbiguousError when a singular value lies in
/// the ambiguity band around the threshold.
std::size_t numerical_rank(const Eigen::MatrixXd& a, const RankOptions& options = {});

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns; empty when not requested
};

/// Full spectrum of a symmetric matrix (LAPACK dsyevd, lower triangle read).
/// Throws EigenFailureError on non-convergence.
SymmetricEigen symmetric_eigen(Eigen::MatrixXd a, bool want_vectors = true);

}  // namespace crosslap::linalg
