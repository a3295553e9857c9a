#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crosslap {

using VertexId = std::uint32_t;

/// Layer of a vertex inside one bicomplex: layer 1 is the top, layer 2 the bottom.
enum class Side { Top, Bottom };

inline Side opposite(Side s) { return s == Side::Top ? Side::Bottom : Side::Top; }
char side_letter(Side s);

/// Bidegree (k,l): k+1 top vertices, l+1 bottom vertices.
struct Grade {
  int k = -1;
  int l = -1;

  int dimension() const { return k + l + 1; }
  auto operator<=>(const Grade&) const = default;
};

std::string to_string(Grade g);

/// A crossimplex in canonical orientation: both vertex lists strictly
/// increasing and at least one of them non-empty.
class Crossimplex {
 public:
  /// Builds from already-canonical lists; throws DegenerateSimplex when a
  /// list is not strictly increasing and EmptySimplex when both are empty.
  Crossimplex(std::vector<VertexId> top, std::vector<VertexId> bottom);

  static Crossimplex top_vertex(VertexId v) { return Crossimplex({v}, {}); }
  static Crossimplex bottom_vertex(VertexId v) { return Crossimplex({}, {v}); }

  const std::vector<VertexId>& top() const { return top_; }
  const std::vector<VertexId>& bottom() const { return bottom_; }
  const std::vector<VertexId>& part(Side s) const { return s == Side::Top ? top_ : bottom_; }

  Grade grade() const {
    return {static_cast<int>(top_.size()) - 1, static_cast<int>(bottom_.size()) - 1};
  }
  int dimension() const { return grade().dimension(); }

  /// Drops position i of the given side. Empty result (the (-1,-1) cell) is nullopt.
  std::optional<Crossimplex> drop(Side side, std::size_t i) const;

  /// Adds vertex v on the given side; nullopt when v is already present.
  std::optional<Crossimplex> insert(Side side, VertexId v) const;

  /// Swaps the two layers.
  Crossimplex mirrored() const { return Crossimplex(bottom_, top_, Unchecked{}); }

  auto operator<=>(const Crossimplex&) const = default;
  bool operator==(const Crossimplex&) const = default;

 private:
  struct Unchecked {};
  Crossimplex(std::vector<VertexId> top, std::vector<VertexId> bottom, Unchecked)
      : top_(std::move(top)), bottom_(std::move(bottom)) {}

  std::vector<VertexId> top_;
  std::vector<VertexId> bottom_;
};

/// "[0,1;4]" style; horizontal cells print as "[0,1;]" / "[;4]".
std::string to_string(const Crossimplex& a);

struct OrientedCrossimplex {
  Crossimplex simplex;
  int sign = 1;  // parity of the permutation that sorts the user's ordering
};

/// Reduces a user-oriented crossimplex to canonical form, tracking the sign
/// of the sorting permutation (product of the per-layer parities).
OrientedCrossimplex make_crossimplex(std::vector<VertexId> top, std::vector<VertexId> bottom);

/// Parity (+1/-1) of the permutation sorting `values`; values must be distinct.
int permutation_sign(std::span<const VertexId> values);

struct Crossface {
  Crossimplex face;
  int sign;
  Side side;
};

/// All top crossfaces (sign (-1)^i) followed by all bottom crossfaces.
/// The empty crossimplex is never produced.
std::vector<Crossface> crossfaces(const Crossimplex& a);

/// Crossfaces on one side only, in drop-position order.
std::vector<Crossface> crossfaces(const Crossimplex& a, Side side);

}  // namespace crosslap
