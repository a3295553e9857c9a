#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crosslap/core/bicomplex.hpp"
#include "crosslap/spectral/hubs.hpp"

namespace crosslap {

using Edge = std::pair<VertexId, VertexId>;  // always first < second

/// Nodes 1..N shared by every layer, plus one simple undirected edge set per
/// layer id.
class Multiplex {
 public:
  explicit Multiplex(VertexId node_count = 0) : node_count_(node_count) {}

  VertexId node_count() const { return node_count_; }
  /// Grows the node set to cover `n`.
  void ensure_node(VertexId n) { node_count_ = std::max(node_count_, n); }
  std::vector<VertexId> nodes() const;

  void add_layer(int layer) { layers_[layer]; }
  /// Adds {u,v} to `layer` (creating the layer). Duplicates are ignored, the
  /// first weight wins. Throws SelfLoop / UnknownVertex / InvalidWeight.
  void add_edge(int layer, VertexId u, VertexId v, std::optional<double> weight = std::nullopt);

  std::vector<int> layers() const;
  bool has_layer(int layer) const { return layers_.contains(layer); }
  /// Throws UnknownLayer.
  const std::set<Edge>& edges(int layer) const;
  std::optional<double> edge_weight(int layer, Edge e) const;

  void set_label(VertexId node, std::string label) { labels_[node] = std::move(label); }
  const std::map<VertexId, std::string>& labels() const { return labels_; }
  /// The node's label, or its id as text.
  std::string label(VertexId node) const;

 private:
  VertexId node_count_;
  std::map<int, std::set<Edge>> layers_;
  std::map<int, std::map<Edge, double>> weights_;
  std::map<VertexId, std::string> labels_;
};

struct DiffusionOptions {
  /// Record layer-s edge weights on the cross-edges.
  bool use_weights = false;
};

/// Diffusion bicomplex of layer s onto layer t: cross-edges (i;j) for
/// {i,j} in E_s with i < j, the clique complex of layer t up to triangles on
/// the bottom, and (i;j,k) whenever both cross-edges exist and {j,k} is in
/// E_t. Throws SameLayer / UnknownLayer.
Bicomplex diffusion_bicomplex(const Multiplex& m, int s, int t, const DiffusionOptions& options = {});

struct DiffusionReport {
  int s = 0;
  int t = 0;
  std::size_t cross_edges = 0;
  SpectralReport spectral;
  std::vector<RankedHub> ranking;
};

/// Persistence ranking of the top nodes from the bottom (0,0)-Laplacian of
/// X^{s->t}. Throws EmptyGrade when there are no cross-edges.
DiffusionReport diffusion_hub_analysis(const Multiplex& m, int s, int t, std::size_t top_n,
                                       const SpectralOptions& spectral = {}, const DiffusionOptions& options = {});

/// Every ordered layer pair, on up to `jobs` threads; order is (s,t)
/// ascending regardless of scheduling.
std::vector<DiffusionReport> diffusion_all_pairs(const Multiplex& m, std::size_t top_n, std::size_t jobs = 1,
                                                 const SpectralOptions& spectral = {},
                                                 const DiffusionOptions& options = {});

}  // namespace crosslap
