#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "crosslap/diffusion/multiplex.hpp"

namespace testing {

/// Ranking of top nodes for X^{s->t} built straight from the edge sets:
/// L = B_up B_up^T + B_down^T B_down over cross-edges (i;j), i<j, {i,j} in
/// E_s, decomposed by Eigen's dense solver. Presence uses the eigenspace
/// projector diagonal, which does not depend on the eigenbasis.
inline std::vector<crosslap::VertexId> oracle_diffusion_ranking(const crosslap::Multiplex& m, int s, int t,
                                                               double tol_zero = 1e-8, double tol_group = 1e-9) {
  using crosslap::VertexId;
  const auto& es = m.edges(s);
  const auto& et = m.edges(t);
  std::vector<std::pair<VertexId, VertexId>> edges(es.begin(), es.end());
  std::sort(edges.begin(), edges.end());
  const auto n = static_cast<Eigen::Index>(edges.size());
  std::map<std::pair<VertexId, VertexId>, Eigen::Index> index;
  for (Eigen::Index i = 0; i < n; ++i) index[edges[static_cast<std::size_t>(i)]] = i;

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  // Shared top vertex: the bottom boundary of (i;j) is +[i].
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (edges[static_cast<std::size_t>(a)].first == edges[static_cast<std::size_t>(b)].first) l(a, b) += 1;
  // Cells (i;j,k): bottom boundary +(i;k) - (i;j).
  for (const auto& [i, j] : edges)
    for (const auto& [i2, k] : edges) {
      if (i2 != i || k <= j || !et.contains({j, k})) continue;
      const Eigen::Index pj = index.at({i, j}), pk = index.at({i, k});
      l(pk, pk) += 1;
      l(pj, pj) += 1;
      l(pj, pk) -= 1;
      l(pk, pj) -= 1;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
  const Eigen::VectorXd values = solver.eigenvalues();
  const Eigen::MatrixXd vectors = solver.eigenvectors();
  const double gap = tol_group * std::max(1.0, values(n - 1));

  std::map<VertexId, std::vector<std::size_t>> presence;
  std::size_t stage = 0;
  for (Eigen::Index begin = 0, i = 1; i <= n; ++i) {
    if (i < n && values(i) - values(i - 1) <= gap) continue;
    const Eigen::MatrixXd block = vectors.middleCols(begin, i - begin);
    std::map<VertexId, double> weight;
    for (Eigen::Index a = 0; a < n; ++a) weight[edges[static_cast<std::size_t>(a)].first] += std::sqrt(block.row(a).squaredNorm());
    for (const auto& [node, w] : weight)
      if (w > 1e-6) presence[node].push_back(stage);
    ++stage;
    begin = i;
  }
  (void)tol_zero;

  std::vector<VertexId> ranking;
  for (const auto& [node, stages] : presence) ranking.push_back(node);
  std::sort(ranking.begin(), ranking.end(), [&](VertexId a, VertexId b) {
    const auto& pa = presence.at(a);
    const auto& pb = presence.at(b);
    return std::tuple(pb.size(), pb.back(), a) < std::tuple(pa.size(), pa.back(), b);
  });
  return ranking;
}

/// Random multiplex on `nodes` nodes with `layers` layers of density p.
inline crosslap::Multiplex random_multiplex(std::mt19937_64& rng, crosslap::VertexId nodes, int layers, double p) {
  crosslap::Multiplex m(nodes);
  std::bernoulli_distribution coin(p);
  for (int s = 1; s <= layers; ++s) {
    m.add_layer(s);
    for (crosslap::VertexId u = 1; u <= nodes; ++u)
      for (crosslap::VertexId v = u + 1; v <= nodes; ++v)
        if (coin(rng)) m.add_edge(s, u, v);
  }
  return m;
}

}  // namespace testing
