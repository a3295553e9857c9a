#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "crosslap/spectral/eigen.hpp"

namespace crosslap {

/// How per-edge intensities combine across the eigenvectors of one stage.
enum class IntensityRule {
  MaxAbs,  // max_r |v_r(a)|
  L1,      // sum_r |v_r(a)|
};

struct SpectralOptions {
  double tol_zero = 1e-8;
  double tol_group = 1e-9;
  IntensityRule rule = IntensityRule::MaxAbs;
  std::size_t dense_limit = 4000;

  EigOptions eig_options() const {
    EigOptions o;
    o.tol_group = tol_group;
    o.tol_zero = tol_zero;
    o.dense_limit = dense_limit;
    return o;
  }
};

/// One group of (numerically) equal eigenvalues.
struct Stage {
  std::size_t index = 0;
  double eigenvalue = 0.0;              // mean of the group
  std::vector<std::size_t> members;     // eigenpair indices
  std::vector<double> intensities;      // per basis cell, >= 0
  std::map<VertexId, double> hubs;      // node -> hubness

  std::size_t multiplicity() const { return members.size(); }
};

/// Groups ascending eigenvalues into maximal runs whose consecutive gaps are
/// <= tol_group * max(1, lambda_max). Only indices and eigenvalues are set.
std::vector<Stage> stage_partition(const EigenDecomposition& e, double tol_group);

/// Per-cell intensity of a stage; coordinates below tol_zero count as 0.
std::vector<double> edge_intensities(const Stage& stage, const Eigen::MatrixXd& vectors,
                                     IntensityRule rule = IntensityRule::MaxAbs, double tol_zero = 1e-8);

/// Diagonal of the orthogonal projector onto the stage's eigenspace. Unlike
/// intensities of a degenerate stage, it does not depend on the chosen basis.
std::vector<double> projector_diagonal(const Stage& stage, const Eigen::MatrixXd& vectors);

/// Sums intensities of (0,0)-cells per far node: the bottom vertex for part
/// Top, the top vertex for part Bottom. Nodes at or below tol_zero are
/// dropped. Throws UnsupportedGrade for any grade but (0,0).
std::map<VertexId, double> spectral_cross_hubs(const ChainBasis& basis, std::span<const double> intensities,
                                               Side part, double tol_zero = 1e-8);

/// Hubness from the square roots of the projector diagonal.
std::map<VertexId, double> projector_hubness(const ChainBasis& basis, const Stage& stage,
                                             const Eigen::MatrixXd& vectors, Side part, double tol_zero = 1e-8);

/// Hubs sorted by descending hubness, ties by node id.
std::vector<std::pair<VertexId, double>> ranked(const std::map<VertexId, double>& hubs);

/// Laplacian, decomposition and fully populated stages of one grade/part.
struct SpectralAnalysis {
  Laplacian laplacian;
  EigenDecomposition decomposition;
  std::vector<Stage> stages;
  double tol_zero = 1e-8;

  /// The lambda = 0 stage, if the Laplacian has a kernel.
  const Stage* harmonic_stage() const;
  /// The lambda_max stage.
  const Stage& principal_stage() const;
};

/// Hubs are filled in only at grade (0,0).
SpectralAnalysis analyze(const Bicomplex& x, Grade grade, Side part, const SpectralOptions& options = {});

/// Spectral cross-hubs of the kernel stage of the (0,0) Laplacian (empty when
/// the kernel is trivial).
std::map<VertexId, double> harmonic_cross_hubs(const Bicomplex& x, Side part, const SpectralOptions& options = {});

/// Spectral cross-hubs of the lambda_max stage of the (0,0) Laplacian.
std::map<VertexId, double> principal_cross_hubs(const Bicomplex& x, Side part, const SpectralOptions& options = {});

/// Stage indices at which each node is a spectral cross-hub.
struct PersistenceBars {
  std::size_t stage_count = 0;
  std::map<VertexId, std::vector<std::size_t>> presence;
  /// Descending by number of stages, then by later last stage, then by id.
  std::vector<VertexId> ranking;

  bool empty() const { return presence.empty(); }
  /// Maximal runs of consecutive stages as inclusive [first, last] pairs.
  std::vector<std::pair<std::size_t, std::size_t>> bars(VertexId node) const;
};

std::vector<std::pair<std::size_t, std::size_t>> consecutive_runs(std::span<const std::size_t> stages);

/// Builds bars from analysed stages; throws SpectrumUnavailable when the
/// decomposition is partial.
PersistenceBars persistence_bars(const SpectralAnalysis& analysis);
PersistenceBars persistence_bars(const Bicomplex& x, Side part, const SpectralOptions& options = {});

/// Plain-value summary of an analysis, free of the eigenvector matrix.
struct SpectralReport {
  struct StageSummary {
    double lambda = 0.0;
    std::size_t multiplicity = 0;
    std::map<VertexId, double> hubs;
  };

  Grade grade;
  Side part = Side::Top;
  bool full_spectrum = true;
  std::vector<double> eigenvalues;
  std::vector<StageSummary> stages;
  /// Set at grade (0,0) when the full spectrum is known.
  std::optional<PersistenceBars> bars;
};

SpectralReport summarize(const SpectralAnalysis& analysis);

struct RankedHub {
  std::size_t rank = 0;  // 1-based
  VertexId node = 0;
  std::size_t persistence_count = 0;
  std::size_t last_stage = 0;
  double hubness_last_stage = 0.0;
};

/// First top_n entries of the persistence ranking (all when top_n == 0).
/// Throws SpectrumUnavailable when the report has no bars.
std::vector<RankedHub> ranked_hubs(const SpectralReport& report, std::size_t top_n = 0);

}  // namespace crosslap
