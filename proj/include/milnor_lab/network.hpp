#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "milnor_lab/datum.hpp"

namespace milnor {

// A family of identical D[p,q] double points (local equation x^p y^q = 0)
// in the network deformation of the reduced curve.
struct NetworkNode {
  enum class Kind { cross, self_node };

  Kind kind = Kind::cross;
  std::size_t first = 0;   // branch i
  std::size_t second = 0;  // branch j > i for cross; equal to first for self_node
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t copies = 1;

  bool operator==(const NetworkNode&) const = default;
};

// Milnor fibre of x^p y^q: gcd(p,q) annuli, each meeting p/g discs on the
// x-side and q/g discs on the y-side.
struct LocalFibre {
  std::int64_t components = 1;
  std::int64_t boundary_circles_side_p = 1;
  std::int64_t boundary_circles_side_q = 1;
};

// Self-nodes first (branch order), then crossings in (i, j) order.
std::vector<NetworkNode> build_network(const EquisingularDatum& datum);

LocalFibre local_fibre(std::int64_t p, std::int64_t q);

// Sum of copies; equals the delta invariant of the reduced total curve.
std::int64_t double_point_count(const std::vector<NetworkNode>& network);

}  // namespace milnor
