#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crosslap/core/crossimplex.hpp"

namespace crosslap {

/// Positive weights keyed by canonical crossimplex; absent keys weigh 1.
class Weighting {
 public:
  double get(const Crossimplex& a) const;
  void set(const Crossimplex& a, double w) { values_[a] = w; }
  bool has(const Crossimplex& a) const { return values_.contains(a); }
  bool empty() const { return values_.empty(); }
  const std::map<Crossimplex, double>& explicit_values() const { return values_; }

 private:
  std::map<Crossimplex, double> values_;
};

/// Crossimplicial bicomplex over a top vertex set V1 and a bottom vertex set
/// V2. Immutable once built; cells of each grade are kept sorted, which is
/// also the canonical chain-basis order.
class Bicomplex {
 public:
  Bicomplex() = default;

  /// Stores exactly the given cells (deduplicated) without closing them.
  /// Intended for loaders and for exercising validate().
  static Bicomplex unchecked(std::vector<VertexId> top_vertices, std::vector<VertexId> bottom_vertices,
                             std::vector<Crossimplex> cells, Weighting weights = {});

  const std::vector<VertexId>& top_vertices() const { return top_vertices_; }
  const std::vector<VertexId>& bottom_vertices() const { return bottom_vertices_; }
  const std::vector<VertexId>& vertices(Side s) const {
    return s == Side::Top ? top_vertices_ : bottom_vertices_;
  }

  /// Sorted cells of grade g; empty when the grade is absent.
  std::span<const Crossimplex> grade(Grade g) const;
  std::span<const Crossimplex> grade(int k, int l) const { return grade(Grade{k, l}); }

  /// Non-empty grades in ascending order.
  std::vector<Grade> grades() const;

  bool contains(const Crossimplex& a) const { return index_of(a).has_value(); }

  /// Position of a inside its grade.
  std::optional<std::size_t> index_of(const Crossimplex& a) const;

  double weight(const Crossimplex& a) const { return weights_.get(a); }
  const Weighting& weights() const { return weights_; }
  bool unit_weights() const;

  /// Highest k+l+1 over stored cells; -1 when empty.
  int dimension() const;
  std::size_t size() const;

  Bicomplex mirrored() const;

  bool operator==(const Bicomplex& other) const;

 private:
  std::vector<VertexId> top_vertices_;
  std::vector<VertexId> bottom_vertices_;
  std::map<Grade, std::vector<Crossimplex>> cells_;
  Weighting weights_;
};

struct SeedCell {
  Crossimplex simplex;
  std::optional<double> weight;
};

/// Smallest bicomplex containing the seed. Generated faces weigh 1; declared
/// vertices are added even if isolated. Throws InvalidWeight on non-positive
/// or non-finite weights.
Bicomplex close(std::span<const SeedCell> seed, std::span<const VertexId> extra_top = {},
                std::span<const VertexId> extra_bottom = {});

Bicomplex close(std::span<const Crossimplex> seed);

struct Violation {
  enum class Kind { MissingFace, InvalidWeight, UnknownVertex, MissingVertex, WeightOnAbsentCell };
  Kind kind;
  std::optional<Crossimplex> subject;
  std::string detail;
};

std::string to_string(Violation::Kind kind);

/// Every violation found (closure, vertex declarations, weight positivity).
/// An empty result means the bicomplex is valid.
std::vector<Violation> validate(const Bicomplex& x);

/// Restriction to cells of dimension <= n; vertex sets are kept.
Bicomplex skeleton(const Bicomplex& x, int n);

/// Simple undirected graph used as input to the clique constructions.
class Graph {
 public:
  Graph() = default;
  /// Throws UnknownVertex for edges outside `vertices` and SelfLoop for loops.
  Graph(std::vector<VertexId> vertices, std::span<const std::pair<VertexId, VertexId>> edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  bool has_vertex(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;
  /// Sorted neighbour list.
  std::span<const VertexId> neighbors(VertexId v) const;
  std::size_t edge_count() const;

 private:
  std::vector<VertexId> vertices_;
  std::map<VertexId, std::vector<VertexId>> adjacency_;
};

/// Calls `visit` for every clique (sorted vertex list, size 1..max_size)
/// whose vertices all lie in `candidates` (sorted).
void for_each_clique(const Graph& g, std::span<const VertexId> candidates, std::size_t max_size,
                     const std::function<void(const std::vector<VertexId>&)>& visit);

/// Cross-clique bicomplex of a two-layer network: all pairs (clique of g1,
/// clique of g2) fully interconnected through `inter`, of dimension <= max_dim.
Bicomplex cross_clique_bicomplex(const Graph& g1, const Graph& g2,
                                 std::span<const std::pair<VertexId, VertexId>> inter, int max_dim = 2);

struct Degrees {
  double top_outer = 0;
  double top_inner = 0;
  double bottom_outer = 0;
  double bottom_inner = 0;
};

/// Weighted TO/TI/BO/BI degrees; throws UnknownSimplex when a is not in x.
Degrees degrees(const Bicomplex& x, const Crossimplex& a);

/// Cells of grade (k+1,l) [Top] or (k,l+1) [Bottom] having a as a crossface.
std::vector<Crossimplex> cofaces(const Bicomplex& x, const Crossimplex& a, Side side);

struct AdjacencyRelation {
  enum class Kind { TopOuter, TopInner, BottomOuter, BottomInner };
  Kind kind;
  Crossimplex witness;

  bool operator==(const AdjacencyRelation&) const = default;
};

/// All TO/TI/BO/BI relations between two distinct same-grade cells, with
/// their witnesses. Throws GradeMismatch if the grades differ.
std::vector<AdjacencyRelation> adjacency(const Bicomplex& x, const Crossimplex& a, const Crossimplex& b);

/// Family of vertex sets plus one bicomplex per ordered layer pair. An
/// undirected multicomplex stores only s < t and mirrors on lookup.
class Multicomplex {
 public:
  explicit Multicomplex(bool directed = false) : directed_(directed) {}

  void add_layer(int layer, std::vector<VertexId> vertices);
  /// Throws UnknownLayer / SameLayer / InvalidBicomplex (vertex sets must
  /// equal the layer's).
  void add(int s, int t, Bicomplex x);

  bool directed() const { return directed_; }
  std::vector<int> layers() const;
  const std::vector<VertexId>& layer(int s) const;
  bool has(int s, int t) const;
  Bicomplex get(int s, int t) const;
  /// Stored pairs (s,t); mirrored pairs are not listed for undirected ones.
  std::vector<std::pair<int, int>> pairs() const;

 private:
  bool directed_;
  std::map<int, std::vector<VertexId>> layers_;
  std::map<std::pair<int, int>, Bicomplex> bicomplexes_;
};

}  // namespace crosslap
