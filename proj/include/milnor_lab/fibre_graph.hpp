#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "milnor_lab/datum.hpp"
#include "milnor_lab/network.hpp"

namespace milnor {

// Graph homotopy model of the Milnor fibre F. Vertices 0..S-1 are sheets
// (branch i, sheet a), ordered branch-major; the remaining vertices are the
// annuli of the expanded network nodes. Each annulus carries one loop edge
// (its core circle) and one incidence edge per disc it is glued into.
class FibreGraph {
 public:
  struct Annulus {
    std::size_t node = 0;     // index into network()
    std::int64_t copy = 0;    // 0 <= copy < node.copies
    std::int64_t residue = 0; // c, 0 <= c < gcd(p,q)
    std::int64_t gcd = 1;
  };

  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;  // u == v for loops
    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
  };

  explicit FibreGraph(const EquisingularDatum& datum);

  const EquisingularDatum& datum() const { return datum_; }
  const std::vector<NetworkNode>& network() const { return network_; }

  std::size_t sheet_count() const { return sheet_offset_.back(); }
  std::size_t annulus_count() const { return annuli_.size(); }
  std::size_t vertex_count() const { return sheet_count() + annulus_count(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t sheet_vertex(std::size_t branch, std::int64_t sheet) const;
  std::pair<std::size_t, std::int64_t> sheet_of(std::size_t vertex) const;
  bool is_sheet(std::size_t vertex) const { return vertex < sheet_count(); }

  const Annulus& annulus(std::size_t vertex) const { return annuli_[vertex - sheet_count()]; }
  std::size_t annulus_vertex(std::size_t node, std::int64_t copy, std::int64_t residue) const;

  const std::vector<Edge>& edges() const { return edges_; }

  // V - E.
  std::int64_t euler_characteristic() const;

  // Component label of every vertex, dense, in order of first appearance.
  std::vector<std::size_t> component_labels() const;
  std::size_t component_count() const;

 private:
  EquisingularDatum datum_;
  std::vector<NetworkNode> network_;
  std::vector<std::size_t> sheet_offset_;      // size r + 1
  std::vector<std::size_t> node_annulus_base_; // first annulus index per node
  std::vector<Annulus> annuli_;
  std::vector<Edge> edges_;
};

struct FibreSummary {
  std::int64_t components = 0;  // d = b0(F)
  std::int64_t b0 = 0;
  std::int64_t b1 = 0;
  std::int64_t chi = 0;
  std::int64_t chi_closed_form = 0;

  bool operator==(const FibreSummary&) const = default;
};

struct ComponentMonodromy {
  std::vector<std::size_t> permutation;  // component c -> permutation[c]
  std::vector<std::size_t> cycle_type;   // descending
};

FibreGraph build_fibre_graph(const EquisingularDatum& datum);

// Sum_i m_i (1 - 2 delta_i - Sum_{j != i} I_ij).
std::int64_t euler_characteristic_closed(const EquisingularDatum& datum);

// Cross-checks graph components against gcd(m_i) and V - E against the
// closed form; throws InconsistencyError on disagreement.
FibreSummary fibre_summary(const EquisingularDatum& datum);
FibreSummary fibre_summary(const FibreGraph& graph);

// Verifies that the sheet shift (a -> a+1 mod m_i, annulus c -> c+1 mod g)
// is a graph automorphism and returns the induced permutation of components.
ComponentMonodromy component_monodromy(const EquisingularDatum& datum);
ComponentMonodromy component_monodromy(const FibreGraph& graph);

struct GcdReduction {
  std::int64_t d = 1;
  EquisingularDatum reduced;
};

GcdReduction divide_by_gcd(const EquisingularDatum& datum);

std::int64_t multiplicity_gcd(const EquisingularDatum& datum);

}  // namespace milnor
