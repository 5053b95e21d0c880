#include "milnor_lab/fibre_graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "milnor_lab/errors.hpp"
#include "milnor_lab/union_find.hpp"

namespace milnor {

FibreGraph::FibreGraph(const EquisingularDatum& datum)
    : datum_(datum), network_(build_network(datum)) {
  const std::size_t r = datum_.branch_count();
  sheet_offset_.assign(r + 1, 0);
  for (std::size_t i = 0; i < r; ++i) {
    sheet_offset_[i + 1] = sheet_offset_[i] + static_cast<std::size_t>(datum_.multiplicity(i));
  }

  std::size_t annulus_total = 0;
  for (const auto& node : network_) {
    node_annulus_base_.push_back(annulus_total);
    annulus_total += static_cast<std::size_t>(node.copies * std::gcd(node.p, node.q));
  }
  annuli_.reserve(annulus_total);

  for (std::size_t n = 0; n < network_.size(); ++n) {
    const NetworkNode& node = network_[n];
    const std::int64_t g = std::gcd(node.p, node.q);
    for (std::int64_t copy = 0; copy < node.copies; ++copy) {
      for (std::int64_t c = 0; c < g; ++c) {
        const std::size_t vertex = sheet_count() + annuli_.size();
        annuli_.push_back({n, copy, c, g});
        edges_.push_back({vertex, vertex});
        // For a self-node both sides run over the same branch, so annulus c
        // joins sheet c to itself (identity offset).
        for (std::int64_t a = c; a < node.p; a += g) {
          edges_.push_back({vertex, sheet_vertex(node.first, a)});
        }
        for (std::int64_t b = c; b < node.q; b += g) {
          edges_.push_back({vertex, sheet_vertex(node.second, b)});
        }
      }
    }
  }
}

std::size_t FibreGraph::sheet_vertex(std::size_t branch, std::int64_t sheet) const {
  return sheet_offset_[branch] + static_cast<std::size_t>(sheet);
}

std::pair<std::size_t, std::int64_t> FibreGraph::sheet_of(std::size_t vertex) const {
  const auto it = std::upper_bound(sheet_offset_.begin(), sheet_offset_.end(), vertex);
  const auto branch = static_cast<std::size_t>(it - sheet_offset_.begin()) - 1;
  return {branch, static_cast<std::int64_t>(vertex - sheet_offset_[branch])};
}

std::size_t FibreGraph::annulus_vertex(std::size_t node, std::int64_t copy,
                                       std::int64_t residue) const {
  const std::int64_t g = std::gcd(network_[node].p, network_[node].q);
  return sheet_count() + node_annulus_base_[node] + static_cast<std::size_t>(copy * g + residue);
}

std::int64_t FibreGraph::euler_characteristic() const {
  return static_cast<std::int64_t>(vertex_count()) - static_cast<std::int64_t>(edge_count());
}

std::vector<std::size_t> FibreGraph::component_labels() const {
  UnionFind sets(vertex_count());
  for (const auto& e : edges_) sets.unite(e.u, e.v);
  return sets.labels();
}

std::size_t FibreGraph::component_count() const {
  UnionFind sets(vertex_count());
  for (const auto& e : edges_) sets.unite(e.u, e.v);
  return sets.set_count();
}

FibreGraph build_fibre_graph(const EquisingularDatum& datum) { return FibreGraph(datum); }

std::int64_t euler_characteristic_closed(const EquisingularDatum& datum) {
  require_valid(datum);
  const std::size_t r = datum.branch_count();
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < r; ++i) {
    std::int64_t meet = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (j != i) meet += datum.intersection(i, j);
    }
    chi += datum.multiplicity(i) * (1 - 2 * datum.delta(i) - meet);
  }
  return chi;
}

std::int64_t multiplicity_gcd(const EquisingularDatum& datum) {
  std::int64_t d = 0;
  for (const auto& b : datum.branches) d = std::gcd(d, b.multiplicity);
  return d;
}

FibreSummary fibre_summary(const FibreGraph& graph) {
  FibreSummary s;
  s.components = static_cast<std::int64_t>(graph.component_count());
  s.b0 = s.components;
  s.chi = graph.euler_characteristic();
  s.chi_closed_form = euler_characteristic_closed(graph.datum());
  s.b1 = s.b0 - s.chi;

  const std::int64_t d = multiplicity_gcd(graph.datum());
  if (s.components != d) {
    throw InconsistencyError("component count: graph union-find gives " +
                             std::to_string(s.components) + " but gcd(m_i) = " + std::to_string(d));
  }
  if (s.chi != s.chi_closed_form) {
    throw InconsistencyError("euler characteristic: graph V-E = " + std::to_string(s.chi) +
                             " but closed form = " + std::to_string(s.chi_closed_form));
  }
  if (s.b1 < 0) {
    throw InconsistencyError("negative first Betti number " + std::to_string(s.b1));
  }
  return s;
}

FibreSummary fibre_summary(const EquisingularDatum& datum) {
  return fibre_summary(FibreGraph(datum));
}

namespace {

std::size_t shift_vertex(const FibreGraph& graph, std::size_t v) {
  if (graph.is_sheet(v)) {
    const auto [branch, sheet] = graph.sheet_of(v);
    return graph.sheet_vertex(branch, (sheet + 1) % graph.datum().multiplicity(branch));
  }
  const auto& a = graph.annulus(v);
  return graph.annulus_vertex(a.node, a.copy, (a.residue + 1) % a.gcd);
}

std::vector<FibreGraph::Edge> normalized(std::vector<FibreGraph::Edge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

ComponentMonodromy component_monodromy(const FibreGraph& graph) {
  std::vector<FibreGraph::Edge> image;
  image.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    image.push_back({shift_vertex(graph, e.u), shift_vertex(graph, e.v)});
  }
  if (normalized(image) != normalized(graph.edges())) {
    throw InconsistencyError("monodromy: sheet shift is not a graph automorphism");
  }

  const auto labels = graph.component_labels();
  const std::size_t d = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  ComponentMonodromy out;
  out.permutation.assign(d, d);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const std::size_t target = labels[shift_vertex(graph, v)];
    auto& slot = out.permutation[labels[v]];
    if (slot != d && slot != target) {
      throw InconsistencyError("monodromy: shift does not induce a map on components");
    }
    slot = target;
  }

  std::vector<bool> seen(d, false);
  for (std::size_t start = 0; start < d; ++start) {
    if (seen[start]) continue;
    std::size_t length = 0;
    for (std::size_t c = start; !seen[c]; c = out.permutation[c]) {
      seen[c] = true;
      ++length;
    }
    out.cycle_type.push_back(length);
  }
  std::sort(out.cycle_type.rbegin(), out.cycle_type.rend());
  if (out.cycle_type.size() != 1) {
    throw InconsistencyError("monodromy: component permutation is not a single " +
                             std::to_string(d) + "-cycle");
  }
  return out;
}

ComponentMonodromy component_monodromy(const EquisingularDatum& datum) {
  return component_monodromy(FibreGraph(datum));
}

GcdReduction divide_by_gcd(const EquisingularDatum& datum) {
  require_valid(datum);
  GcdReduction out{multiplicity_gcd(datum), datum};
  for (auto& b : out.reduced.branches) b.multiplicity /= out.d;
  return out;
}

}  // namespace milnor
