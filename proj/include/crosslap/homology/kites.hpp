#pragma once

#include <vector>

#include <Eigen/Dense>

#include "crosslap/core/bicomplex.hpp"

namespace crosslap {

/// Chain of cross-triangles sharing one apex vertex. With apex_side Bottom
/// the spine lives in V1 and consecutive spine pairs span (1,0)-cells with
/// the apex; with apex_side Top the spine lives in V2 ((0,1)-cells).
struct Kite {
  std::vector<VertexId> spine;
  VertexId apex;
  Side apex_side;

  bool operator==(const Kite&) const = default;
};

/// Every kite whose spine is a simple path of 2..max_len vertices, one per
/// reversal class (spine.front() < spine.back()).
std::vector<Kite> enumerate_kites(const Bicomplex& x, Side apex_side, std::size_t max_len);

/// Two cross-edges to a common apex whose triple is not a kite boundary.
struct Cone {
  VertexId base_first;
  VertexId base_second;
  VertexId apex;
  Side base_side;
  /// Base endpoints joined by a path in the base layer's horizontal 1-skeleton.
  bool closed;

  bool operator==(const Cone&) const = default;
};

enum class ConeMode {
  /// One cone between consecutive kite classes of each apex; the count
  /// equals the (0,0) cross-Betti number of the base side.
  Generating,
  /// Every non-kite-boundary triple.
  All,
};

std::vector<Cone> enumerate_cones(const Bicomplex& x, Side base_side, ConeMode mode = ConeMode::Generating);

/// The (0,0)-chain [second;apex] - [first;apex] (layers swapped for a
/// bottom base), in the (0,0) chain basis of x.
Eigen::VectorXd cone_cycle(const Bicomplex& x, const Cone& cone);

/// Classes of base-side vertices joined to `apex` by a cross-edge, where
/// two vertices share a class when a kite connects them. Sorted by minimum.
std::vector<std::vector<VertexId>> kite_classes(const Bicomplex& x, Side base_side, VertexId apex);

}  // namespace crosslap
