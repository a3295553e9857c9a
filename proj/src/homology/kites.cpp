#include "crosslap/homology/kites.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "crosslap/error.hpp"
#include "crosslap/homology/chains.hpp"

namespace crosslap {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Cross-edge [base;apex] in the orientation of x (top part first).
Crossimplex cross_edge(Side base_side, VertexId base, VertexId apex) {
  return base_side == Side::Top ? Crossimplex({base}, {apex}) : Crossimplex({apex}, {base});
}

// Per apex: base vertices on cross-edges, and kite-graph adjacency.
struct ApexStar {
  std::vector<VertexId> base;
  std::map<VertexId, std::vector<VertexId>> links;
};

std::map<VertexId, ApexStar> apex_stars(const Bicomplex& x, Side base_side) {
  std::map<VertexId, ApexStar> stars;
  const Side apex_side = opposite(base_side);
  for (const auto& e : x.grade(0, 0)) {
    stars[e.part(apex_side).front()].base.push_back(e.part(base_side).front());
  }
  const Grade tri = base_side == Side::Top ? Grade{1, 0} : Grade{0, 1};
  for (const auto& t : x.grade(tri)) {
    const auto& b = t.part(base_side);
    auto& star = stars[t.part(apex_side).front()];
    star.links[b[0]].push_back(b[1]);
    star.links[b[1]].push_back(b[0]);
  }
  for (auto& [apex, star] : stars) {
    std::sort(star.base.begin(), star.base.end());
    for (auto& [v, n] : star.links) std::sort(n.begin(), n.end());
  }
  return stars;
}

std::vector<std::vector<VertexId>> classes_of(const ApexStar& star) {
  const auto& base = star.base;
  UnionFind uf(base.size());
  auto pos = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(base.begin(), base.end(), v) - base.begin());
  };
  for (const auto& [v, nbrs] : star.links) {
    for (VertexId u : nbrs) uf.unite(pos(v), pos(u));
  }
  std::map<std::size_t, std::vector<VertexId>> grouped;
  for (std::size_t i = 0; i < base.size(); ++i) grouped[uf.find(i)].push_back(base[i]);
  // Roots are the smallest index of each class, so the map is ordered by minimum.
  std::vector<std::vector<VertexId>> out;
  for (auto& [root, members] : grouped) out.push_back(std::move(members));
  return out;
}

// Components of the horizontal 1-skeleton on one side, as vertex -> root.
std::map<VertexId, VertexId> horizontal_components(const Bicomplex& x, Side side) {
  const auto& verts = x.vertices(side);
  UnionFind uf(verts.size());
  auto pos = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  const Grade edges = side == Side::Top ? Grade{1, -1} : Grade{-1, 1};
  for (const auto& e : x.grade(edges)) {
    const auto& p = e.part(side);
    uf.unite(pos(p[0]), pos(p[1]));
  }
  std::map<VertexId, VertexId> root;
  for (std::size_t i = 0; i < verts.size(); ++i) root[verts[i]] = verts[uf.find(i)];
  return root;
}

void extend_spines(const ApexStar& star, std::vector<VertexId>& path, std::size_t max_len, VertexId apex,
                   Side apex_side, std::vector<Kite>& out) {
  if (path.size() >= 2 && path.front() < path.back()) out.push_back({path, apex, apex_side});
  if (path.size() >= max_len) return;
  auto it = star.links.find(path.back());
  if (it == star.links.end()) return;
  for (VertexId next : it->second) {
    if (std::find(path.begin(), path.end(), next) != path.end()) continue;
    path.push_back(next);
    extend_spines(star, path, max_len, apex, apex_side, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Kite> enumerate_kites(const Bicomplex& x, Side apex_side, std::size_t max_len) {
  std::vector<Kite> out;
  for (const auto& [apex, star] : apex_stars(x, opposite(apex_side))) {
    for (const auto& [start, nbrs] : star.links) {
      std::vector<VertexId> path{start};
      extend_spines(star, path, max_len, apex, apex_side, out);
    }
  }
  return out;
}

std::vector<std::vector<VertexId>> kite_classes(const Bicomplex& x, Side base_side, VertexId apex) {
  const auto stars = apex_stars(x, base_side);
  auto it = stars.find(apex);
  if (it == stars.end()) return {};
  return classes_of(it->second);
}

std::vector<Cone> enumerate_cones(const Bicomplex& x, Side base_side, ConeMode mode) {
  const auto component = horizontal_components(x, base_side);
  auto make = [&](VertexId a, VertexId b, VertexId apex) {
    if (a > b) std::swap(a, b);
    return Cone{a, b, apex, base_side, component.at(a) == component.at(b)};
  };
  std::vector<Cone> out;
  for (const auto& [apex, star] : apex_stars(x, base_side)) {
    const auto classes = classes_of(star);
    if (mode == ConeMode::Generating) {
      for (std::size_t r = 0; r + 1 < classes.size(); ++r) {
        out.push_back(make(classes[r].back(), classes[r + 1].front(), apex));
      }
      continue;
    }
    std::map<VertexId, std::size_t> class_of;
    for (std::size_t r = 0; r < classes.size(); ++r) {
      for (VertexId v : classes[r]) class_of[v] = r;
    }
    for (std::size_t i = 0; i < star.base.size(); ++i) {
      for (std::size_t j = i + 1; j < star.base.size(); ++j) {
        if (class_of[star.base[i]] != class_of[star.base[j]]) out.push_back(make(star.base[i], star.base[j], apex));
      }
    }
  }
  return out;
}

Eigen::VectorXd cone_cycle(const Bicomplex& x, const Cone& cone) {
  const ChainBasis basis(x, {0, 0});
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  const auto first = basis.index_of(cross_edge(cone.base_side, cone.base_first, cone.apex));
  const auto second = basis.index_of(cross_edge(cone.base_side, cone.base_second, cone.apex));
  if (!first || !second) throw Error(ErrorKind::UnknownSimplex, "cone cross-edge missing from the bicomplex");
  v(static_cast<Eigen::Index>(*second)) += 1.0;
  v(static_cast<Eigen::Index>(*first)) -= 1.0;
  return v;
}

}  // namespace crosslap
