#include "crosslap/core/bicomplex.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crosslap/error.hpp"

namespace crosslap {

double Weighting::get(const Crossimplex& a) const {
  auto it = values_.find(a);
  return it == values_.end() ? 1.0 : it->second;
}

namespace {

void sort_unique(std::vector<VertexId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Bicomplex Bicomplex::unchecked(std::vector<VertexId> top_vertices, std::vector<VertexId> bottom_vertices,
                               std::vector<Crossimplex> cells, Weighting weights) {
  Bicomplex x;
  sort_unique(top_vertices);
  sort_unique(bottom_vertices);
  x.top_vertices_ = std::move(top_vertices);
  x.bottom_vertices_ = std::move(bottom_vertices);
  for (auto& c : cells) {
    const Grade g = c.grade();
    x.cells_[g].push_back(std::move(c));
  }
  for (auto& [g, v] : x.cells_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  // Unit weights are the default; keep the map sparse.
  for (const auto& [a, w] : weights.explicit_values()) {
    if (w != 1.0) x.weights_.set(a, w);
  }
  return x;
}

std::span<const Crossimplex> Bicomplex::grade(Grade g) const {
  auto it = cells_.find(g);
  if (it == cells_.end()) return {};
  return it->second;
}

std::vector<Grade> Bicomplex::grades() const {
  std::vector<Grade> out;
  for (const auto& [g, v] : cells_) {
    if (!v.empty()) out.push_back(g);
  }
  return out;
}

std::optional<std::size_t> Bicomplex::index_of(const Crossimplex& a) const {
  const auto cells = grade(a.grade());
  auto it = std::lower_bound(cells.begin(), cells.end(), a);
  if (it == cells.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - cells.begin());
}

bool Bicomplex::unit_weights() const {
  for (const auto& [a, w] : weights_.explicit_values()) {
    if (w != 1.0) return false;
  }
  return true;
}

int Bicomplex::dimension() const {
  int d = -1;
  for (const auto& [g, v] : cells_) {
    if (!v.empty()) d = std::max(d, g.dimension());
  }
  return d;
}

std::size_t Bicomplex::size() const {
  std::size_t n = 0;
  for (const auto& [g, v] : cells_) n += v.size();
  return n;
}

Bicomplex Bicomplex::mirrored() const {
  std::vector<Crossimplex> cells;
  cells.reserve(size());
  Weighting w;
  for (const auto& [g, v] : cells_) {
    for (const auto& a : v) cells.push_back(a.mirrored());
  }
  for (const auto& [a, value] : weights_.explicit_values()) w.set(a.mirrored(), value);
  return unchecked(bottom_vertices_, top_vertices_, std::move(cells), std::move(w));
}

bool Bicomplex::operator==(const Bicomplex& other) const {
  if (top_vertices_ != other.top_vertices_ || bottom_vertices_ != other.bottom_vertices_) return false;
  if (grades() != other.grades()) return false;
  for (const auto& g : grades()) {
    if (!std::ranges::equal(grade(g), other.grade(g))) return false;
  }
  return weights_.explicit_values() == other.weights_.explicit_values();
}

Bicomplex close(std::span<const SeedCell> seed, std::span<const VertexId> extra_top,
                std::span<const VertexId> extra_bottom) {
  std::set<Crossimplex> all;
  std::vector<Crossimplex> stack;
  Weighting weights;
  for (const auto& cell : seed) {
    if (cell.weight) {
      if (!(*cell.weight > 0.0) || !std::isfinite(*cell.weight)) {
        throw Error(ErrorKind::InvalidWeight,
                    "weight " + std::to_string(*cell.weight) + " on " + to_string(cell.simplex));
      }
      weights.set(cell.simplex, *cell.weight);
    }
    if (all.insert(cell.simplex).second) stack.push_back(cell.simplex);
  }
  while (!stack.empty()) {
    Crossimplex a = std::move(stack.back());
    stack.pop_back();
    for (auto& f : crossfaces(a)) {
      if (all.insert(f.face).second) stack.push_back(std::move(f.face));
    }
  }
  std::vector<VertexId> top(extra_top.begin(), extra_top.end());
  std::vector<VertexId> bottom(extra_bottom.begin(), extra_bottom.end());
  for (const auto& a : all) {
    top.insert(top.end(), a.top().begin(), a.top().end());
    bottom.insert(bottom.end(), a.bottom().begin(), a.bottom().end());
  }
  for (VertexId v : extra_top) all.insert(Crossimplex::top_vertex(v));
  for (VertexId v : extra_bottom) all.insert(Crossimplex::bottom_vertex(v));
  return Bicomplex::unchecked(std::move(top), std::move(bottom), {all.begin(), all.end()}, std::move(weights));
}

Bicomplex close(std::span<const Crossimplex> seed) {
  std::vector<SeedCell> cells;
  cells.reserve(seed.size());
  for (const auto& a : seed) cells.push_back({a, std::nullopt});
  return close(cells);
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::MissingFace: return "MissingFace";
    case Violation::Kind::InvalidWeight: return "InvalidWeight";
    case Violation::Kind::UnknownVertex: return "UnknownVertex";
    case Violation::Kind::MissingVertex: return "MissingVertex";
    case Violation::Kind::WeightOnAbsentCell: return "WeightOnAbsentCell";
  }
  return "Unknown";
}

std::vector<Violation> validate(const Bicomplex& x) {
  std::vector<Violation> out;
  const auto declared = [&](Side s, VertexId v) {
    const auto& vs = x.vertices(s);
    return std::binary_search(vs.begin(), vs.end(), v);
  };
  for (const auto& g : x.grades()) {
    for (const auto& a : x.grade(g)) {
      for (Side s : {Side::Top, Side::Bottom}) {
        for (VertexId v : a.part(s)) {
          if (!declared(s, v)) {
            out.push_back({Violation::Kind::UnknownVertex, a,
                           "vertex " + std::to_string(v) + " not in V" + (s == Side::Top ? "1" : "2")});
          }
        }
      }
      for (const auto& f : crossfaces(a)) {
        if (!x.contains(f.face)) {
          out.push_back({Violation::Kind::MissingFace, f.face, "crossface of " + to_string(a)});
        }
      }
    }
  }
  for (VertexId v : x.top_vertices()) {
    if (!x.contains(Crossimplex::top_vertex(v))) {
      out.push_back({Violation::Kind::MissingVertex, Crossimplex::top_vertex(v), "declared top vertex not stored"});
    }
  }
  for (VertexId v : x.bottom_vertices()) {
    if (!x.contains(Crossimplex::bottom_vertex(v))) {
      out.push_back(
          {Violation::Kind::MissingVertex, Crossimplex::bottom_vertex(v), "declared bottom vertex not stored"});
    }
  }
  for (const auto& [a, w] : x.weights().explicit_values()) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      out.push_back({Violation::Kind::InvalidWeight, a, "weight " + std::to_string(w)});
    }
    if (!x.contains(a)) out.push_back({Violation::Kind::WeightOnAbsentCell, a, "weight on absent cell"});
  }
  return out;
}

Bicomplex skeleton(const Bicomplex& x, int n) {
  std::vector<Crossimplex> cells;
  Weighting w;
  for (const auto& g : x.grades()) {
    if (g.dimension() > n) continue;
    for (const auto& a : x.grade(g)) {
      cells.push_back(a);
      if (x.weights().has(a)) w.set(a, x.weight(a));
    }
  }
  return Bicomplex::unchecked(x.top_vertices(), x.bottom_vertices(), std::move(cells), std::move(w));
}

// ---------------------------------------------------------------------------
// Graphs and cliques

Graph::Graph(std::vector<VertexId> vertices, std::span<const std::pair<VertexId, VertexId>> edges)
    : vertices_(std::move(vertices)) {
  sort_unique(vertices_);
  for (VertexId v : vertices_) adjacency_[v];
  for (auto [u, v] : edges) {
    if (!has_vertex(u) || !has_vertex(v)) {
      throw Error(ErrorKind::UnknownVertex,
                  "edge {" + std::to_string(u) + "," + std::to_string(v) + "} references an unknown vertex");
    }
    if (u == v) throw Error(ErrorKind::SelfLoop, "self-loop at " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& [v, nbrs] : adjacency_) sort_unique(nbrs);
}

bool Graph::has_vertex(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto it = adjacency_.find(u);
  return it != adjacency_.end() && std::binary_search(it->second.begin(), it->second.end(), v);
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) return {};
  return it->second;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [v, nbrs] : adjacency_) twice += nbrs.size();
  return twice / 2;
}

namespace {

// Extends `clique` with candidates greater than its last vertex.
void extend_cliques(const Graph& g, std::vector<VertexId>& clique, std::span<const VertexId> candidates,
                    std::size_t max_size, const std::function<void(const std::vector<VertexId>&)>& visit) {
  visit(clique);
  if (clique.size() >= max_size) return;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const VertexId v = candidates[i];
    std::vector<VertexId> next;
    const auto nbrs = g.neighbors(v);
    std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(), nbrs.begin(),
                          nbrs.end(), std::back_inserter(next));
    clique.push_back(v);
    extend_cliques(g, clique, next, max_size, visit);
    clique.pop_back();
  }
}

}  // namespace

void for_each_clique(const Graph& g, std::span<const VertexId> candidates, std::size_t max_size,
                     const std::function<void(const std::vector<VertexId>&)>& visit) {
  if (max_size == 0) return;
  std::vector<VertexId> clique;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!g.has_vertex(candidates[i])) continue;
    std::vector<VertexId> next;
    const auto nbrs = g.neighbors(candidates[i]);
    std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(), nbrs.begin(),
                          nbrs.end(), std::back_inserter(next));
    clique.push_back(candidates[i]);
    extend_cliques(g, clique, next, max_size, visit);
    clique.pop_back();
  }
}

Bicomplex cross_clique_bicomplex(const Graph& g1, const Graph& g2,
                                 std::span<const std::pair<VertexId, VertexId>> inter, int max_dim) {
  std::map<VertexId, std::vector<VertexId>> cross;  // top vertex -> sorted bottom partners
  for (auto [u, v] : inter) {
    if (!g1.has_vertex(u) || !g2.has_vertex(v)) {
      throw Error(ErrorKind::UnknownVertex,
                  "inter-layer edge (" + std::to_string(u) + "," + std::to_string(v) + ") references an unknown vertex");
    }
    cross[u].push_back(v);
  }
  for (auto& [u, vs] : cross) sort_unique(vs);

  std::vector<Crossimplex> cells;
  if (max_dim >= 0) {
    const auto max_cells = static_cast<std::size_t>(max_dim) + 1;
    for_each_clique(g2, g2.vertices(), max_cells,
                    [&](const std::vector<VertexId>& c) { cells.emplace_back(std::vector<VertexId>{}, c); });
    for_each_clique(g1, g1.vertices(), max_cells, [&](const std::vector<VertexId>& top) {
      cells.emplace_back(top, std::vector<VertexId>{});
      // Bottom vertices joined to every top vertex of the clique.
      std::vector<VertexId> common;
      for (std::size_t i = 0; i < top.size(); ++i) {
        auto it = cross.find(top[i]);
        if (it == cross.end()) return;
        if (i == 0) {
          common = it->second;
        } else {
          std::vector<VertexId> next;
          std::set_intersection(common.begin(), common.end(), it->second.begin(), it->second.end(),
                                std::back_inserter(next));
          common = std::move(next);
        }
      }
      if (top.size() >= max_cells) return;
      for_each_clique(g2, common, max_cells - top.size(),
                      [&](const std::vector<VertexId>& bottom) { cells.emplace_back(top, bottom); });
    });
  }
  return Bicomplex::unchecked(g1.vertices(), g2.vertices(), std::move(cells));
}

// ---------------------------------------------------------------------------
// Degrees and adjacency

std::vector<Crossimplex> cofaces(const Bicomplex& x, const Crossimplex& a, Side side) {
  std::vector<Crossimplex> out;
  for (VertexId v : x.vertices(side)) {
    if (auto c = a.insert(side, v); c && x.contains(*c)) out.push_back(std::move(*c));
  }
  return out;
}

Degrees degrees(const Bicomplex& x, const Crossimplex& a) {
  if (!x.contains(a)) throw Error(ErrorKind::UnknownSimplex, to_string(a) + " is not in the bicomplex");
  Degrees d;
  for (const auto& c : cofaces(x, a, Side::Top)) d.top_outer += x.weight(c);
  for (const auto& c : cofaces(x, a, Side::Bottom)) d.bottom_outer += x.weight(c);
  for (const auto& f : crossfaces(a, Side::Top)) d.top_inner += 1.0 / x.weight(f.face);
  for (const auto& f : crossfaces(a, Side::Bottom)) d.bottom_inner += 1.0 / x.weight(f.face);
  return d;
}

namespace {

// Union / intersection on one side when the other side agrees and the
// differing side shares all but one vertex.
void side_relations(const Bicomplex& x, const Crossimplex& a, const Crossimplex& b, Side side,
                    std::vector<AdjacencyRelation>& out) {
  if (a.part(opposite(side)) != b.part(opposite(side))) return;
  const auto& pa = a.part(side);
  const auto& pb = b.part(side);
  std::vector<VertexId> common;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
  if (common.size() + 1 != pa.size()) return;

  std::vector<VertexId> joined;
  std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(joined));
  const auto& other = a.part(opposite(side));
  auto build = [&](std::vector<VertexId> part) {
    return side == Side::Top ? Crossimplex(std::move(part), other) : Crossimplex(other, std::move(part));
  };
  const auto outer = side == Side::Top ? AdjacencyRelation::Kind::TopOuter : AdjacencyRelation::Kind::BottomOuter;
  const auto inner = side == Side::Top ? AdjacencyRelation::Kind::TopInner : AdjacencyRelation::Kind::BottomInner;
  if (Crossimplex c = build(std::move(joined)); x.contains(c)) out.push_back({outer, std::move(c)});
  if (!common.empty() || !other.empty()) {
    if (Crossimplex d = build(std::move(common)); x.contains(d)) out.push_back({inner, std::move(d)});
  }
}

}  // namespace

std::vector<AdjacencyRelation> adjacency(const Bicomplex& x, const Crossimplex& a, const Crossimplex& b) {
  if (a.grade() != b.grade()) {
    throw Error(ErrorKind::GradeMismatch, to_string(a) + " and " + to_string(b) + " have different grades");
  }
  std::vector<AdjacencyRelation> out;
  if (a == b) return out;
  side_relations(x, a, b, Side::Top, out);
  side_relations(x, a, b, Side::Bottom, out);
  return out;
}

// ---------------------------------------------------------------------------
// Multicomplex

void Multicomplex::add_layer(int layer, std::vector<VertexId> vertices) {
  sort_unique(vertices);
  layers_[layer] = std::move(vertices);
}

void Multicomplex::add(int s, int t, Bicomplex x) {
  if (s == t) throw Error(ErrorKind::SameLayer, "layer pair (" + std::to_string(s) + "," + std::to_string(s) + ")");
  if (!layers_.contains(s) || !layers_.contains(t)) {
    throw Error(ErrorKind::UnknownLayer, "layer pair (" + std::to_string(s) + "," + std::to_string(t) + ")");
  }
  if (!directed_ && s > t) {
    std::swap(s, t);
    x = x.mirrored();
  }
  if (x.top_vertices() != layers_.at(s) || x.bottom_vertices() != layers_.at(t)) {
    throw Error(ErrorKind::InvalidBicomplex, "bicomplex vertex sets do not match layers " + std::to_string(s) +
                                                 " and " + std::to_string(t));
  }
  bicomplexes_[{s, t}] = std::move(x);
}

std::vector<int> Multicomplex::layers() const {
  std::vector<int> out;
  for (const auto& [s, v] : layers_) out.push_back(s);
  return out;
}

const std::vector<VertexId>& Multicomplex::layer(int s) const {
  auto it = layers_.find(s);
  if (it == layers_.end()) throw Error(ErrorKind::UnknownLayer, "layer " + std::to_string(s));
  return it->second;
}

bool Multicomplex::has(int s, int t) const {
  if (bicomplexes_.contains({s, t})) return true;
  return !directed_ && bicomplexes_.contains({t, s});
}

Bicomplex Multicomplex::get(int s, int t) const {
  if (auto it = bicomplexes_.find({s, t}); it != bicomplexes_.end()) return it->second;
  if (!directed_) {
    if (auto it = bicomplexes_.find({t, s}); it != bicomplexes_.end()) return it->second.mirrored();
  }
  throw Error(ErrorKind::UnknownLayer, "no bicomplex for (" + std::to_string(s) + "," + std::to_string(t) + ")");
}

std::vector<std::pair<int, int>> Multicomplex::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [p, x] : bicomplexes_) out.push_back(p);
  return out;
}

}  // namespace crosslap
