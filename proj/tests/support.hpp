#pragma once

#include <random>
#include <string>
#include <vector>

#include "crosslap/core/bicomplex.hpp"
#include "crosslap/io/formats.hpp"

namespace testing {

using crosslap::Bicomplex;
using crosslap::Crossimplex;
using crosslap::VertexId;

inline Crossimplex C(std::vector<VertexId> top, std::vector<VertexId> bottom) { return {std::move(top), std::move(bottom)}; }

inline std::string data_path(const std::string& name) { return std::string(CROSSLAP_TEST_DATA) + "/" + name; }

inline Bicomplex fixture(const std::string& name) { return crosslap::io::parse_bicomplex(data_path(name)).complex; }

inline Bicomplex sample() { return fixture("sample.json"); }
inline Bicomplex kite_complex() { return fixture("kite_complex.json"); }

/// Random closed bicomplex with at most `max_cells` cells. Seeds are random
/// crossimplices on small vertex pools, so dense overlaps are common.
inline Bicomplex random_bicomplex(std::mt19937_64& rng, std::size_t max_cells = 40, bool weighted = false) {
  std::uniform_int_distribution<int> pool(2, 5);
  std::uniform_int_distribution<int> seeds(1, 6);
  std::uniform_real_distribution<double> weight(0.5, 2.5);
  std::bernoulli_distribution coin(0.3);
  for (;;) {
    const int n1 = pool(rng), n2 = pool(rng);
    std::vector<crosslap::SeedCell> seed;
    const int count = seeds(rng);
    for (int i = 0; i < count; ++i) {
      std::vector<VertexId> top, bottom;
      for (int v = 0; v < n1; ++v)
        if (std::bernoulli_distribution(0.45)(rng)) top.push_back(static_cast<VertexId>(v));
      for (int v = 0; v < n2; ++v)
        if (std::bernoulli_distribution(0.45)(rng)) bottom.push_back(static_cast<VertexId>(v));
      if (top.empty() && bottom.empty()) continue;
      if (top.size() + bottom.size() > 4) continue;
      std::optional<double> w;
      if (weighted && coin(rng)) w = weight(rng);
      seed.push_back({Crossimplex(top, bottom), w});
    }
    if (seed.empty()) continue;
    std::vector<VertexId> extra_top, extra_bottom;
    if (coin(rng)) extra_top.push_back(static_cast<VertexId>(n1));
    auto x = crosslap::close(seed, extra_top, extra_bottom);
    if (weighted) {
      // Put weights on faces too, not only on seeds.
      std::vector<crosslap::SeedCell> all;
      for (const auto& g : x.grades())
        for (const auto& a : x.grade(g)) {
          std::optional<double> w = x.weights().has(a) ? std::optional<double>(x.weight(a)) : std::nullopt;
          if (!w && coin(rng)) w = weight(rng);
          all.push_back({a, w});
        }
      x = crosslap::close(all, x.top_vertices(), x.bottom_vertices());
    }
    if (x.size() <= max_cells) return x;
  }
}

}  // namespace testing
