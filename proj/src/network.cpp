#include "milnor_lab/network.hpp"

#include <numeric>

#include "milnor_lab/errors.hpp"

namespace milnor {

std::vector<NetworkNode> build_network(const EquisingularDatum& datum) {
  require_valid(datum);
  std::vector<NetworkNode> nodes;
  const std::size_t r = datum.branch_count();
  for (std::size_t i = 0; i < r; ++i) {
    if (datum.delta(i) == 0) continue;
    const auto m = datum.multiplicity(i);
    nodes.push_back({NetworkNode::Kind::self_node, i, i, m, m, datum.delta(i)});
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      nodes.push_back({NetworkNode::Kind::cross, i, j, datum.multiplicity(i),
                       datum.multiplicity(j), datum.intersection(i, j)});
    }
  }
  return nodes;
}

LocalFibre local_fibre(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) throw InputError("local_fibre: p and q must be ≥ 1");
  return {std::gcd(p, q), p, q};
}

std::int64_t double_point_count(const std::vector<NetworkNode>& network) {
  std::int64_t total = 0;
  for (const auto& node : network) total += node.copies;
  return total;
}

}  // namespace milnor
