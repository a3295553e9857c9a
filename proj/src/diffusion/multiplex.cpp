#include "crosslap/diffusion/multiplex.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "crosslap/error.hpp"

namespace crosslap {

std::vector<VertexId> Multiplex::nodes() const {
  std::vector<VertexId> out(node_count_);
  for (VertexId i = 0; i < node_count_; ++i) out[i] = i + 1;
  return out;
}

void Multiplex::add_edge(int layer, VertexId u, VertexId v, std::optional<double> weight) {
  if (u == v) throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(u));
  if (u == 0 || v == 0 || u > node_count_ || v > node_count_) {
    throw Error(ErrorKind::UnknownVertex, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} outside nodes 1.." +
                                              std::to_string(node_count_));
  }
  if (weight && !(std::isfinite(*weight) && *weight > 0)) {
    throw Error(ErrorKind::InvalidWeight, "edge weight must be positive and finite");
  }
  const Edge e = std::minmax(u, v);
  auto& edges = layers_[layer];
  if (!edges.insert(e).second) return;
  if (weight) weights_[layer][e] = *weight;
}

std::vector<int> Multiplex::layers() const {
  std::vector<int> out;
  for (const auto& [id, edges] : layers_) out.push_back(id);
  return out;
}

const std::set<Edge>& Multiplex::edges(int layer) const {
  auto it = layers_.find(layer);
  if (it == layers_.end()) throw Error(ErrorKind::UnknownLayer, "no layer " + std::to_string(layer));
  return it->second;
}

std::optional<double> Multiplex::edge_weight(int layer, Edge e) const {
  auto it = weights_.find(layer);
  if (it == weights_.end()) return std::nullopt;
  auto w = it->second.find(e);
  if (w == it->second.end()) return std::nullopt;
  return w->second;
}

std::string Multiplex::label(VertexId node) const {
  auto it = labels_.find(node);
  return it == labels_.end() ? std::to_string(node) : it->second;
}

Bicomplex diffusion_bicomplex(const Multiplex& m, int s, int t, const DiffusionOptions& options) {
  if (s == t) throw Error(ErrorKind::SameLayer, "diffusion needs two distinct layers, got " + std::to_string(s) + " twice");
  const auto& es = m.edges(s);
  const auto& et = m.edges(t);
  const auto nodes = m.nodes();

  std::vector<Crossimplex> cells;
  Weighting weights;
  for (VertexId v : nodes) {
    cells.push_back(Crossimplex::top_vertex(v));
    cells.push_back(Crossimplex::bottom_vertex(v));
  }
  for (const auto& [j, k] : et) {
    cells.emplace_back(std::vector<VertexId>{}, std::vector<VertexId>{j, k});
  }
  const std::vector<std::pair<VertexId, VertexId>> et_list(et.begin(), et.end());
  const Graph gt(nodes, et_list);
  for (const auto& [j, k] : et) {
    for (VertexId c : gt.neighbors(k)) {
      if (c > k && gt.has_edge(j, c)) cells.emplace_back(std::vector<VertexId>{}, std::vector<VertexId>{j, k, c});
    }
  }

  // Cross-edges go from the smaller endpoint (top) to the larger (bottom).
  std::map<VertexId, std::vector<VertexId>> up;
  for (const auto& e : es) {
    const auto& [i, j] = e;
    Crossimplex a({i}, {j});
    if (options.use_weights) {
      if (auto w = m.edge_weight(s, e)) weights.set(a, *w);
    }
    cells.push_back(std::move(a));
    up[i].push_back(j);
  }
  for (const auto& [i, js] : up) {
    for (std::size_t a = 0; a < js.size(); ++a) {
      for (std::size_t b = a + 1; b < js.size(); ++b) {
        if (et.contains(std::minmax(js[a], js[b]))) cells.emplace_back(std::vector<VertexId>{i}, std::vector<VertexId>{js[a], js[b]});
      }
    }
  }
  return Bicomplex::unchecked(nodes, nodes, std::move(cells), std::move(weights));
}

DiffusionReport diffusion_hub_analysis(const Multiplex& m, int s, int t, std::size_t top_n,
                                       const SpectralOptions& spectral, const DiffusionOptions& options) {
  const Bicomplex x = diffusion_bicomplex(m, s, t, options);
  DiffusionReport r;
  r.s = s;
  r.t = t;
  r.cross_edges = x.grade(0, 0).size();
  if (r.cross_edges == 0) {
    throw Error(ErrorKind::EmptyGrade, "layer " + std::to_string(s) + " has no edges, so X^{" + std::to_string(s) + "->" +
                                           std::to_string(t) + "} has no cross-edges");
  }
  r.spectral = summarize(analyze(x, {0, 0}, Side::Bottom, spectral));
  r.ranking = ranked_hubs(r.spectral, top_n);
  return r;
}

std::vector<DiffusionReport> diffusion_all_pairs(const Multiplex& m, std::size_t top_n, std::size_t jobs,
                                                 const SpectralOptions& spectral, const DiffusionOptions& options) {
  std::vector<std::pair<int, int>> pairs;
  for (int s : m.layers()) {
    for (int t : m.layers()) {
      if (s != t) pairs.emplace_back(s, t);
    }
  }
  std::vector<DiffusionReport> out(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < pairs.size();) {
      try {
        out[i] = diffusion_hub_analysis(m, pairs[i].first, pairs[i].second, top_n, spectral, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, pairs.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t k = 0; k < n; ++k) threads.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace crosslap
