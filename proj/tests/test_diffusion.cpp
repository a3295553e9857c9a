#include <doctest.h>

#include <random>

#include "crosslap/error.hpp"
#include "crosslap/homology/betti.hpp"
#include "diffusion_oracle.hpp"
#include "support.hpp"

using namespace crosslap;
using testing::C;

namespace {

Multiplex two_layers(VertexId n, std::vector<Edge> s, std::vector<Edge> t) {
  Multiplex m(n);
  m.add_layer(1);
  m.add_layer(2);
  for (auto [u, v] : s) m.add_edge(1, u, v);
  for (auto [u, v] : t) m.add_edge(2, u, v);
  return m;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidConfig;
}

}  // namespace

TEST_CASE("diffusion bicomplex over a triangle onto an edge") {
  auto m = two_layers(3, {{1, 2}, {1, 3}, {2, 3}}, {{2, 3}});
  auto x = diffusion_bicomplex(m, 1, 2);
  auto cross = x.grade(0, 0);
  std::vector<Crossimplex> want{C({1}, {2}), C({1}, {3}), C({2}, {3})};
  CHECK(std::ranges::equal(cross, want));
  REQUIRE(x.grade(0, 1).size() == 1);
  CHECK(x.grade(0, 1)[0] == C({1}, {2, 3}));
  CHECK(x.grade(1, -1).empty());
  CHECK(x.grade(1, 0).empty());
  CHECK(validate(x).empty());
}

TEST_CASE("diffusion bicomplex over a path") {
  auto m = two_layers(3, {{1, 2}, {2, 3}}, {{2, 3}});
  auto x = diffusion_bicomplex(m, 1, 2);
  std::vector<Crossimplex> want{C({1}, {2}), C({2}, {3})};
  CHECK(std::ranges::equal(x.grade(0, 0), want));
  CHECK(x.grade(0, 1).empty());
}

TEST_CASE("empty source layer leaves only the target clique complex") {
  auto m = two_layers(4, {}, {{1, 2}, {2, 3}, {1, 3}, {3, 4}});
  auto x = diffusion_bicomplex(m, 1, 2);
  CHECK(x.grade(0, 0).empty());
  CHECK(x.grade(0, 1).empty());
  CHECK(x.grade(-1, 1).size() == 4);
  CHECK(x.grade(-1, 2).size() == 1);
  CHECK(x.grade(0, -1).size() == 4);
  CHECK(kind_of([&] { diffusion_hub_analysis(m, 1, 2, 5); }) == ErrorKind::EmptyGrade);
}

TEST_CASE("diffusion errors") {
  auto m = two_layers(3, {{1, 2}}, {{2, 3}});
  CHECK(kind_of([&] { diffusion_bicomplex(m, 1, 1); }) == ErrorKind::SameLayer);
  CHECK(kind_of([&] { diffusion_bicomplex(m, 1, 9); }) == ErrorKind::UnknownLayer);
  CHECK(kind_of([&] { m.add_edge(1, 2, 2); }) == ErrorKind::SelfLoop);
  CHECK(kind_of([&] { m.add_edge(1, 2, 4); }) == ErrorKind::UnknownVertex);
}

TEST_CASE("single source edge gives a single candidate hub") {
  auto m = two_layers(4, {{2, 4}}, {{1, 2}, {3, 4}});
  auto r = diffusion_hub_analysis(m, 1, 2, 10);
  CHECK(r.cross_edges == 1);
  REQUIRE(r.ranking.size() == 1);
  CHECK(r.ranking[0].node == 2);
  CHECK(r.ranking[0].hubness_last_stage == doctest::Approx(1.0));
}

TEST_CASE("hand-built 5-node multiplex matches the dense oracle") {
  auto m = two_layers(5, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {4, 5}}, {{2, 3}, {3, 4}, {2, 4}, {1, 5}});
  m.set_label(1, "AAA");
  for (auto [s, t] : {std::pair{1, 2}, std::pair{2, 1}}) {
    auto r = diffusion_hub_analysis(m, s, t, 0);
    std::vector<VertexId> got;
    for (const auto& h : r.ranking) got.push_back(h.node);
    CHECK(got == testing::oracle_diffusion_ranking(m, s, t));
  }
  // Node 1 reaches bottom 2,3,4 with the (1;2,3), (1;3,4), (1;2,4) cells.
  auto x = diffusion_bicomplex(m, 1, 2);
  CHECK(x.grade(0, 1).size() == 3);
  CHECK(x.contains(C({1}, {2, 3})));
  CHECK(m.label(1) == "AAA");
  CHECK(m.label(2) == "2");
}

TEST_CASE("diffusion invariants on random multiplexes") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = testing::random_multiplex(rng, 9, 3, 0.35);
    for (int s : m.layers())
      for (int t : m.layers()) {
        if (s == t) continue;
        auto x = diffusion_bicomplex(m, s, t);
        CHECK(validate(x).empty());
        CHECK(x.grade(0, 0).size() == m.edges(s).size());
        for (int k = 1; k <= 3; ++k) CHECK(x.grade(k, -1).empty());
        CHECK(x.grade(1, 0).empty());
        for (const auto& c : x.grade(0, 1)) {
          const VertexId i = c.top()[0], j = c.bottom()[0], k = c.bottom()[1];
          CHECK(m.edges(s).contains({i, j}));
          CHECK(m.edges(s).contains({i, k}));
          CHECK(m.edges(t).contains({j, k}));
          CHECK(i < j);
        }
        // Brute force: every admissible triple is present.
        for (VertexId i = 1; i <= 9; ++i)
          for (VertexId j = i + 1; j <= 9; ++j)
            for (VertexId k = j + 1; k <= 9; ++k)
              if (m.edges(s).contains({i, j}) && m.edges(s).contains({i, k}) && m.edges(t).contains({j, k}))
                CHECK(x.contains(C({i}, {j, k})));
      }
  }
}

TEST_CASE("diffusion is asymmetric") {
  auto m = two_layers(3, {{1, 2}, {1, 3}, {2, 3}}, {{2, 3}});
  auto forward = betti_vector(diffusion_bicomplex(m, 1, 2), 0, 0).value;
  auto backward = betti_vector(diffusion_bicomplex(m, 2, 1), 0, 0).value;
  CHECK(diffusion_bicomplex(m, 1, 2).grade(0, 0).size() != diffusion_bicomplex(m, 2, 1).grade(0, 0).size());

  std::mt19937_64 rng(42);
  bool found = !(forward == backward);
  for (int trial = 0; trial < 200 && !found; ++trial) {
    auto r = testing::random_multiplex(rng, 6, 2, 0.5);
    found = !(betti_vector(diffusion_bicomplex(r, 1, 2), 0, 0).value == betti_vector(diffusion_bicomplex(r, 2, 1), 0, 0).value);
  }
  CHECK(found);
}

TEST_CASE("weights are recorded only on request") {
  Multiplex m(3);
  m.add_edge(1, 1, 2, 4.0);
  m.add_edge(1, 2, 1, 9.0);  // duplicate, first weight wins
  m.add_edge(2, 2, 3);
  CHECK(m.edges(1).size() == 1);
  CHECK(*m.edge_weight(1, {1, 2}) == 4.0);
  CHECK(diffusion_bicomplex(m, 1, 2).unit_weights());
  auto w = diffusion_bicomplex(m, 1, 2, {.use_weights = true});
  CHECK(w.weight(C({1}, {2})) == 4.0);
}

TEST_CASE("all pairs in parallel equal the sequential run") {
  std::mt19937_64 rng(43);
  auto m = testing::random_multiplex(rng, 12, 3, 0.4);
  auto seq = diffusion_all_pairs(m, 5, 1);
  auto par = diffusion_all_pairs(m, 5, 4);
  REQUIRE(seq.size() == 6);
  REQUIRE(par.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(seq[i].s == par[i].s);
    CHECK(seq[i].t == par[i].t);
    CHECK(seq[i].spectral.eigenvalues == par[i].spectral.eigenvalues);
    REQUIRE(seq[i].ranking.size() == par[i].ranking.size());
    for (std::size_t j = 0; j < seq[i].ranking.size(); ++j) CHECK(seq[i].ranking[j].node == par[i].ranking[j].node);
  }
}
