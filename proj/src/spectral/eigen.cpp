#include "crosslap/spectral/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "crosslap/error.hpp"
#include "crosslap/linalg.hpp"

namespace crosslap {

namespace {

using Op = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;
};

// Removes the components along the columns of `basis` (twice, for stability).
void orthogonalize(Eigen::VectorXd& v, const Eigen::MatrixXd& basis, Eigen::Index cols) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const auto b = basis.leftCols(cols);
    v -= b * (b.transpose() * v);
  }
}

// Largest eigenpair of `op` restricted to the complement of `locked`, by
// explicitly restarted Lanczos with full reorthogonalization.
Eigenpair lanczos_top(const Op& op, Eigen::Index n, const Eigen::MatrixXd& locked, Eigen::Index locked_count,
                      std::mt19937_64& rng, double resid_tol, std::size_t& iterations) {
  const Eigen::Index free_dim = n - locked_count;
  const Eigen::Index steps = std::min<Eigen::Index>(free_dim, 120);
  std::normal_distribution<double> normal;
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = normal(rng);

  Eigenpair best{0.0, {}};
  for (int restart = 0; restart < 60; ++restart) {
    orthogonalize(start, locked, locked_count);
    double norm = start.norm();
    if (norm == 0.0) throw EigenFailureError("Lanczos start vector vanished", -1, iterations);
    Eigen::MatrixXd q(n, steps);
    std::vector<double> alpha;
    std::vector<double> beta;
    q.col(0) = start / norm;
    Eigen::Index m = 0;
    for (; m < steps; ++m) {
      ++iterations;
      Eigen::VectorXd w = op(q.col(m));
      const double scale = w.norm();
      alpha.push_back(q.col(m).dot(w));
      // Both projections twice: a small w would otherwise carry back locked
      // components that the division by b then amplifies.
      for (int pass = 0; pass < 2; ++pass) {
        orthogonalize(w, locked, locked_count);
        orthogonalize(w, q, m + 1);
      }
      const double b = w.norm();
      if (m + 1 == steps || b <= 1e-10 * scale) {
        beta.push_back(b);
        ++m;
        break;
      }
      beta.push_back(b);
      q.col(m + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    const Eigen::VectorXd y = small.eigenvectors().col(m - 1);
    best.value = small.eigenvalues()(m - 1);
    best.vector = q.leftCols(m) * y;
    best.vector.normalize();
    const double residual = (op(best.vector) - best.value * best.vector).norm();
    if (residual <= resid_tol) return best;
    start = best.vector;
  }
  throw EigenFailureError("Lanczos did not converge", -1, iterations);
}

// Eigenpairs of the top group of `op`: keeps deflating while the next
// extremal value stays within `group_tol` of the first one.
std::vector<Eigenpair> top_group(const Op& op, Eigen::Index n, double group_tol, double resid_tol,
                                 std::size_t cap, bool& capped) {
  std::mt19937_64 rng(0x5eed);
  Eigen::MatrixXd locked(n, 0);
  std::vector<Eigenpair> out;
  std::size_t iterations = 0;
  capped = false;
  while (static_cast<Eigen::Index>(out.size()) < n) {
    if (out.size() >= cap) {
      capped = true;
      break;
    }
    Eigenpair p = lanczos_top(op, n, locked, locked.cols(), rng, resid_tol, iterations);
    if (!out.empty() && p.value < out.front().value - group_tol) break;
    locked.conservativeResize(n, locked.cols() + 1);
    orthogonalize(p.vector, locked, locked.cols() - 1);
    p.vector.normalize();
    locked.col(locked.cols() - 1) = p.vector;
    out.push_back(std::move(p));
  }
  return out;
}

EigenDecomposition iterative_extremes(const Laplacian& lap, const EigOptions& options) {
  const Eigen::SparseMatrix<double> s = lap.symmetric_sparse();
  const Eigen::Index n = s.rows();
  // Gershgorin bound on the spectrum.
  double bound = 0.0;
  for (int col = 0; col < s.outerSize(); ++col) {
    double sum = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(s, col); it; ++it) sum += std::abs(it.value());
    bound = std::max(bound, sum);
  }
  const double resid_tol = 1e-10 * std::max(1.0, bound);
  bool capped = false;
  const auto top = top_group([&](const Eigen::VectorXd& v) { Eigen::VectorXd r = s * v; return r; }, n,
                             options.tol_group * std::max(1.0, bound), resid_tol, options.iterative_kernel_cap,
                             capped);
  const double lambda_max = top.front().value;
  const double zero_tol = options.tol_zero * std::max(1.0, lambda_max);
  const double shift = bound;
  std::vector<Eigenpair> kernel;
  // A single-valued spectrum is already covered by the top group.
  if (static_cast<Eigen::Index>(top.size()) < n && lambda_max > zero_tol) {
    kernel = top_group([&](const Eigen::VectorXd& v) { Eigen::VectorXd r = shift * v - s * v; return r; }, n,
                       zero_tol, resid_tol, options.iterative_kernel_cap, capped);
  }
  kernel.erase(std::remove_if(kernel.begin(), kernel.end(),
                              [&](const Eigenpair& p) { return shift - p.value > zero_tol; }),
               kernel.end());
  if (capped && !kernel.empty() && shift - kernel.back().value <= zero_tol) {
    throw Error(ErrorKind::SpectrumUnavailable,
                "kernel dimension exceeds the iterative cap of " + std::to_string(options.iterative_kernel_cap));
  }

  EigenDecomposition d;
  d.full_spectrum = false;
  const auto count = static_cast<Eigen::Index>(kernel.size() + top.size());
  d.values.resize(count);
  d.vectors.resize(n, count);
  Eigen::Index c = 0;
  for (auto it = kernel.rbegin(); it != kernel.rend(); ++it, ++c) {
    d.values(c) = shift - it->value;
    d.vectors.col(c) = it->vector;
  }
  for (auto it = top.rbegin(); it != top.rend(); ++it, ++c) {
    d.values(c) = it->value;
    d.vectors.col(c) = it->vector;
  }
  return d;
}

}  // namespace

Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& block) {
  const Eigen::Index n = block.rows();
  const Eigen::Index m = block.cols();
  if (m <= 1) return block;
  Eigen::MatrixXd q(m, m);
  Eigen::Index accepted = 0;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  constexpr double kAccept = 1e-6;
  constexpr Eigen::Index kBlock = 64;
  // Greedy Gram-Schmidt over the rows, in row order. A block of rows is first
  // reduced against everything accepted before it in one product, then
  // scanned one row at a time.
  for (Eigen::Index start = 0; start < n && accepted < m; start += kBlock) {
    const Eigen::Index len = std::min(kBlock, n - start);
    Eigen::MatrixXd rows = block.middleRows(start, len).transpose();
    const Eigen::Index before = accepted;
    if (before > 0) {
      for (int pass = 0; pass < 2; ++pass) {
        const auto b = q.leftCols(before);
        rows.noalias() -= b * (b.transpose() * rows);
      }
    }
    for (Eigen::Index j = 0; j < len && accepted < m; ++j) {
      Eigen::VectorXd r = rows.col(j);
      for (int pass = 0; pass < 2 && accepted > before; ++pass) {
        const auto b = q.middleCols(before, accepted - before);
        r -= b * (b.transpose() * r);
      }
      const double norm = r.norm();
      if (norm > kAccept) {
        q.col(accepted++) = r / norm;
        used[static_cast<std::size_t>(start + j)] = true;
      }
    }
  }
  // Directions carried only by tiny coordinates: take the largest residuals.
  while (accepted < m) {
    Eigen::Index best = -1;
    double best_norm = 0.0;
    Eigen::VectorXd best_r;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Eigen::VectorXd r = block.row(i).transpose();
      orthogonalize(r, q, accepted);
      if (r.norm() > best_norm) {
        best_norm = r.norm();
        best = i;
        best_r = r;
      }
    }
    if (best < 0 || best_norm == 0.0) return block;
    used[static_cast<std::size_t>(best)] = true;
    q.col(accepted++) = best_r / best_norm;
  }
  return block * q;
}

void normalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const double peak = vectors.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      if (std::abs(vectors(r, c)) >= peak - 1e-10 * std::max(1.0, peak)) {
        if (vectors(r, c) < 0) vectors.col(c) *= -1.0;
        break;
      }
    }
  }
}

EigenDecomposition eig(const Laplacian& lap, const EigOptions& options) {
  EigenDecomposition d;
  if (lap.size() > options.dense_limit) {
    d = iterative_extremes(lap, options);
  } else {
    auto dense = linalg::symmetric_eigen(lap.symmetric_dense(), true);
    d.values = std::move(dense.values);
    d.vectors = std::move(dense.vectors);
  }
  d.grade = lap.grade;
  d.part = lap.part;
  d.basis = lap.basis;

  if (options.canonicalize && d.values.size() > 1) {
    const double gap = options.tol_group * std::max(1.0, d.lambda_max());
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= d.values.size(); ++i) {
      if (i == d.values.size() || d.values(i) - d.values(i - 1) > gap) {
        if (i - begin > 1) d.vectors.middleCols(begin, i - begin) = canonical_basis(d.vectors.middleCols(begin, i - begin));
        begin = i;
      }
    }
  }
  normalize_signs(d.vectors);
  return d;
}

}  // namespace crosslap
