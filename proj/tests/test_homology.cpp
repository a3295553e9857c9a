#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "crosslap/error.hpp"
#include "crosslap/homology/betti.hpp"
#include "crosslap/homology/chains.hpp"
#include "crosslap/homology/kites.hpp"
#include "support.hpp"

using namespace crosslap;
using testing::C;

namespace {

struct UnionFind {
  std::map<VertexId, VertexId> parent;
  VertexId find(VertexId v) {
    auto [it, fresh] = parent.emplace(v, v);
    if (it->second == v) return v;
    return it->second = find(it->second);
  }
  void join(VertexId a, VertexId b) { parent[find(a)] = find(b); }
  std::size_t components() {
    std::size_t n = 0;
    for (auto& [v, p] : parent) n += find(v) == v;
    return n;
  }
};

}  // namespace

TEST_CASE("sample top boundary of a cross-triangle") {
  auto x = testing::sample();
  auto b = boundary_matrix(x, 1, 0, Side::Top);
  CHECK(b.row_count() == 9);
  CHECK(b.col_count() == 2);
  const auto col = *b.cols.index_of(C({0, 1}, {1}));
  CHECK(b.at(*b.rows.index_of(C({1}, {1})), col) == 1);
  CHECK(b.at(*b.rows.index_of(C({0}, {1})), col) == -1);
  for (std::size_t r = 0; r < b.row_count(); ++r) {
    if (b.rows[r] != C({1}, {1}) && b.rows[r] != C({0}, {1})) CHECK(b.at(r, col) == 0);
  }
  auto empty = boundary_matrix(x, 1, 1, Side::Top);
  CHECK(empty.col_count() == 0);

  // Coboundary is the transpose of the boundary landing in (0,0).
  auto d = coboundary_matrix(x, 0, 0, Side::Top);
  CHECK(d.row_count() == 2);
  CHECK(d.col_count() == 9);
  CHECK((d.dense() - b.dense().transpose()).norm() == 0.0);
}

TEST_CASE("boundary entries are unique, nonzero and column-major sorted") {
  auto x = testing::sample();
  for (const auto& g : x.grades()) {
    for (Side s : {Side::Top, Side::Bottom}) {
      auto b = boundary_matrix(x, g.k, g.l, s);
      for (std::size_t i = 0; i < b.entries.size(); ++i) {
        CHECK(b.entries[i].value != 0);
        if (i) {
          const auto& p = b.entries[i - 1];
          const auto& q = b.entries[i];
          CHECK(std::pair(p.col, p.row) < std::pair(q.col, q.row));
        }
      }
    }
  }
}

TEST_CASE("sample Betti vectors") {
  auto x = testing::sample();
  auto check = [&](int k, int l, std::size_t top, std::size_t bottom) {
    auto r = betti_vector(x, k, l);
    CHECK(r.value.top == top);
    CHECK(r.value.bottom == bottom);
    REQUIRE(r.routes_agree.has_value());
    CHECK(*r.routes_agree);
  };
  check(0, -1, 2, 3);
  check(1, -1, 1, 6);
  check(-1, 0, 2, 1);
  check(-1, 1, 5, 0);
  check(0, 0, 3, 2);
}

TEST_CASE("kite complex Betti vector") {
  auto r = betti_vector(testing::kite_complex(), 0, 0);
  CHECK(r.value == BettiVector{3, 1});
}

TEST_CASE("single cross-edge") {
  std::vector<Crossimplex> seed{C({0}, {0})};
  auto r = betti_vector(close(seed), 0, 0);
  CHECK(r.value == BettiVector{0, 0});
}

TEST_CASE("rank ambiguity is reported with its band") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(2, 2) = 1e-10;
  try {
    linalg::numerical_rank(m);
    FAIL("expected RankAmbiguous");
  } catch (const RankAmbiguousError& e) {
    CHECK(e.kind() == ErrorKind::RankAmbiguous);
    CHECK(e.sigma() == doctest::Approx(1e-10));
    CHECK(e.band_low() < 1e-10);
    CHECK(e.band_high() > 1e-10);
  }
  m(2, 2) = 1e-20;
  CHECK(linalg::numerical_rank(m) == 2);
}

TEST_CASE("cross-Betti table") {
  Multicomplex m;
  auto x = testing::sample();
  m.add_layer(1, x.top_vertices());
  m.add_layer(2, x.bottom_vertices());
  m.add(1, 2, x);
  auto t = cross_betti_table(m);
  REQUIRE(t.size() == 1);
  const auto& col = t.at({1, 2});
  CHECK(col.at({0, -1}) == BettiVector{2, 3});
  CHECK(col.at({1, -1}) == BettiVector{1, 6});
  CHECK(col.at({-1, 0}) == BettiVector{2, 1});
  CHECK(col.at({-1, 1}) == BettiVector{5, 0});
  CHECK(col.at({0, 0}) == BettiVector{3, 2});

  Multicomplex empty;
  empty.add_layer(1, {});
  empty.add_layer(2, {});
  empty.add(1, 2, Bicomplex{});
  const auto empty_table = cross_betti_table(empty);
  for (const auto& [g, b] : empty_table.at({1, 2})) CHECK(b == BettiVector{});
}

TEST_CASE("cross-Betti table matches per-pair calls on a 3-layer multicomplex") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    Multicomplex m;
    std::map<int, std::vector<VertexId>> layers{{1, {0, 1, 2, 3}}, {2, {0, 1, 2}}, {3, {0, 1, 2, 3, 4}}};
    for (const auto& [id, vs] : layers) m.add_layer(id, vs);
    std::bernoulli_distribution coin(0.5);
    for (int s = 1; s <= 3; ++s)
      for (int t = s + 1; t <= 3; ++t) {
        std::vector<SeedCell> seed;
        for (VertexId a : layers[s])
          for (VertexId b : layers[t])
            if (coin(rng)) seed.push_back({C({a}, {b}), std::nullopt});
        for (std::size_t i = 0; i + 1 < layers[s].size(); ++i)
          if (coin(rng)) seed.push_back({C({layers[s][i], layers[s][i + 1]}, {}), std::nullopt});
        m.add(s, t, close(seed, layers[s], layers[t]));
      }
    auto table = cross_betti_table(m);
    for (const auto& [pair, column] : table) {
      auto x = m.get(pair.first, pair.second);
      for (const auto& [g, b] : column) CHECK(betti_vector(x, g.k, g.l).value == b);
    }
  }
}

TEST_CASE("kites") {
  auto app = testing::kite_complex();
  auto kites = enumerate_kites(app, Side::Top, 4);
  Kite want{{1, 2, 3, 4}, 6, Side::Top};
  CHECK(std::find(kites.begin(), kites.end(), want) != kites.end());
  // Sub-kites are kites too.
  CHECK(std::find(kites.begin(), kites.end(), Kite{{2, 3, 4}, 6, Side::Top}) != kites.end());
  CHECK(std::find(kites.begin(), kites.end(), Kite{{1, 2}, 6, Side::Top}) != kites.end());

  auto sample_kites = enumerate_kites(testing::sample(), Side::Bottom, 3);
  CHECK(std::find(sample_kites.begin(), sample_kites.end(), Kite{{0, 1, 2}, 1, Side::Bottom}) != sample_kites.end());
  for (const auto& k : sample_kites) CHECK(k.spine.front() < k.spine.back());

  std::vector<Crossimplex> seed{C({0}, {0}), C({1}, {0})};
  CHECK(enumerate_kites(close(seed), Side::Bottom, 4).empty());
}

TEST_CASE("kite complex cones") {
  auto x = testing::kite_complex();
  auto v1 = enumerate_cones(x, Side::Top);
  std::vector<Cone> want1{{2, 4, 1, Side::Top, true}, {4, 6, 1, Side::Top, false}, {4, 6, 4, Side::Top, false}};
  CHECK(v1 == want1);
  auto v2 = enumerate_cones(x, Side::Bottom);
  std::vector<Cone> want2{{1, 4, 4, Side::Bottom, true}};
  CHECK(v2 == want2);
}

TEST_CASE("sample cones over V1 include the v1_4/v1_6 pairs") {
  auto x = testing::sample();
  for (auto mode : {ConeMode::Generating, ConeMode::All}) {
    auto cones = enumerate_cones(x, Side::Top, mode);
    auto has = [&](VertexId a, VertexId b, VertexId apex) {
      return std::any_of(cones.begin(), cones.end(), [&](const Cone& c) {
        return c.base_first == a && c.base_second == b && c.apex == apex;
      });
    };
    CHECK(has(4, 6, 1));
    CHECK(has(4, 6, 4));
  }
}

TEST_CASE("no cones when every triple spans a cross-triangle") {
  using E = std::vector<std::pair<VertexId, VertexId>>;
  E tri{{0, 1}, {1, 2}, {0, 2}}, all;
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 0; b < 3; ++b) all.emplace_back(a, b);
  auto x = cross_clique_bicomplex(Graph({0, 1, 2}, tri), Graph({0, 1, 2}, tri), all, 2);
  CHECK(enumerate_cones(x, Side::Top, ConeMode::All).empty());
  CHECK(enumerate_cones(x, Side::Bottom, ConeMode::All).empty());
}

TEST_CASE("generating cone count equals the (0,0) Betti numbers") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    auto x = testing::random_bicomplex(rng);
    if (x.grade(0, 0).empty()) continue;
    auto b = betti_vector(x, 0, 0, {.cross_check = false}).value;
    CHECK(enumerate_cones(x, Side::Top).size() == b.top);
    CHECK(enumerate_cones(x, Side::Bottom).size() == b.bottom);
  }
}

TEST_CASE("cone cycles are top cycles") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    auto x = testing::random_bicomplex(rng);
    if (x.grade(0, 0).empty()) continue;
    for (Side base : {Side::Top, Side::Bottom}) {
      // Both cross-edges drop their base vertex onto the same apex.
      const auto d = boundary_matrix(x, 0, 0, base).dense();
      for (const auto& cone : enumerate_cones(x, base, ConeMode::All)) {
        const Eigen::VectorXd z = cone_cycle(x, cone);
        CHECK((d * z).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("horizontal Betti numbers count components and free vertices") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    auto x = testing::random_bicomplex(rng);
    if (x.top_vertices().empty() || x.bottom_vertices().empty()) continue;
    UnionFind top, bottom;
    for (VertexId v : x.top_vertices()) top.find(v);
    for (VertexId v : x.bottom_vertices()) bottom.find(v);
    for (const auto& e : x.grade(1, -1)) top.join(e.top()[0], e.top()[1]);
    for (const auto& e : x.grade(-1, 1)) bottom.join(e.bottom()[0], e.bottom()[1]);
    auto b0 = betti_vector(x, 0, -1, {.cross_check = false}).value;
    auto b1 = betti_vector(x, -1, 0, {.cross_check = false}).value;
    CHECK(b0.top == top.components());
    CHECK(b1.bottom == bottom.components());

    std::set<VertexId> crossed_top, crossed_bottom;
    for (const auto& a : x.grade(0, 0)) {
      crossed_top.insert(a.top()[0]);
      crossed_bottom.insert(a.bottom()[0]);
    }
    CHECK(b0.bottom == x.top_vertices().size() - crossed_top.size());
    CHECK(b1.top == x.bottom_vertices().size() - crossed_bottom.size());
  }
}
