#include "crosslap/core/crossimplex.hpp"

#include <algorithm>
#include <numeric>

#include "crosslap/error.hpp"

namespace crosslap {

char side_letter(Side s) { return s == Side::Top ? 'T' : 'B'; }

std::string to_string(Grade g) {
  return "(" + std::to_string(g.k) + "," + std::to_string(g.l) + ")";
}

namespace {

void require_strictly_increasing(const std::vector<VertexId>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] >= v[i]) {
      throw Error(ErrorKind::DegenerateSimplex,
                  v[i - 1] == v[i] ? "repeated vertex " + std::to_string(v[i])
                                   : "vertex list not in canonical order");
    }
  }
}

std::string join(const std::vector<VertexId>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

Crossimplex::Crossimplex(std::vector<VertexId> top, std::vector<VertexId> bottom)
    : top_(std::move(top)), bottom_(std::move(bottom)) {
  if (top_.empty() && bottom_.empty()) {
    throw Error(ErrorKind::EmptySimplex, "crossimplex needs at least one vertex");
  }
  require_strictly_increasing(top_);
  require_strictly_increasing(bottom_);
}

std::optional<Crossimplex> Crossimplex::drop(Side side, std::size_t i) const {
  std::vector<VertexId> t = top_;
  std::vector<VertexId> b = bottom_;
  auto& v = side == Side::Top ? t : b;
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  if (t.empty() && b.empty()) return std::nullopt;
  return Crossimplex(std::move(t), std::move(b), Unchecked{});
}

std::optional<Crossimplex> Crossimplex::insert(Side side, VertexId vertex) const {
  std::vector<VertexId> t = top_;
  std::vector<VertexId> b = bottom_;
  auto& v = side == Side::Top ? t : b;
  auto it = std::lower_bound(v.begin(), v.end(), vertex);
  if (it != v.end() && *it == vertex) return std::nullopt;
  v.insert(it, vertex);
  return Crossimplex(std::move(t), std::move(b), Unchecked{});
}

std::string to_string(const Crossimplex& a) {
  return "[" + join(a.top()) + ";" + join(a.bottom()) + "]";
}

int permutation_sign(std::span<const VertexId> values) {
  // Cycle decomposition of the sorting permutation: sign = (-1)^(n - #cycles).
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<bool> seen(n, false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = order[j]) seen[j] = true;
  }
  return ((n - cycles) % 2 == 0) ? 1 : -1;
}

OrientedCrossimplex make_crossimplex(std::vector<VertexId> top, std::vector<VertexId> bottom) {
  if (top.empty() && bottom.empty()) {
    throw Error(ErrorKind::EmptySimplex, "crossimplex needs at least one vertex");
  }
  const int sign = permutation_sign(top) * permutation_sign(bottom);
  std::sort(top.begin(), top.end());
  std::sort(bottom.begin(), bottom.end());
  return {Crossimplex(std::move(top), std::move(bottom)), sign};
}

std::vector<Crossface> crossfaces(const Crossimplex& a, Side side) {
  std::vector<Crossface> out;
  const std::size_t n = a.part(side).size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto f = a.drop(side, i)) out.push_back({std::move(*f), (i % 2 == 0) ? 1 : -1, side});
  }
  return out;
}

std::vector<Crossface> crossfaces(const Crossimplex& a) {
  auto out = crossfaces(a, Side::Top);
  auto bottom = crossfaces(a, Side::Bottom);
  out.insert(out.end(), std::make_move_iterator(bottom.begin()), std::make_move_iterator(bottom.end()));
  return out;
}

}  // namespace crosslap
