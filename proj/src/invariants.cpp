#include "milnor_lab/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "milnor_lab/errors.hpp"

namespace milnor {

namespace {

void require_singular(const EquisingularDatum& datum) {
  if (is_reduced(datum)) {
    throw UndefinedInvariant("β undefined: isolated singularity (all multiplicities are 1)");
  }
}

}  // namespace

bool is_reduced(const EquisingularDatum& datum) {
  return std::all_of(datum.branches.begin(), datum.branches.end(),
                     [](const Branch& b) { return b.multiplicity == 1; });
}

TransversalData transversal_data(const EquisingularDatum& datum) {
  require_valid(datum);
  TransversalData out;
  for (std::size_t i = 0; i < datum.branch_count(); ++i) {
    const auto m = datum.multiplicity(i);
    if (m < 2) continue;
    out.branches.push_back({i, m, m - 1});
    out.total_points += m;
    out.total_mu_perp += m - 1;
  }
  return out;
}

BetaReport beta(const EquisingularDatum& datum, const FibreSummary& fibre) {
  require_singular(datum);
  const TransversalData transversal = transversal_data(datum);

  BetaReport report;
  report.b0 = fibre.b0;
  report.b1 = fibre.b1;
  report.chi = fibre.chi;
  report.total_transversal_points = transversal.total_points;
  report.total_mu_perp = transversal.total_mu_perp;
  report.singular_branch_count = transversal.branches.size();
  // Rank count of 0 -> H1(F) -> H1(F,F') -> H0(F') -> H0(F) -> 0, with
  // H0(F,F') = 0 because every component of F meets F'.
  report.beta = fibre.b1 - fibre.b0 + transversal.total_points;

  report.criteria.beta_zero = report.beta == 0;
  report.criteria.chi_form = fibre.chi == 1 - transversal.total_mu_perp;
  report.criteria.homology_form = fibre.b1 == 0 && fibre.b0 - 1 == transversal.total_mu_perp;
  report.verdict_bobadilla = datum.branch_count() == 1 && datum.delta(0) == 0;
  return report;
}

BetaReport beta(const EquisingularDatum& datum) {
  require_singular(datum);
  return beta(datum, fibre_summary(datum));
}

IntMatrix cyclic_shift_matrix(std::int64_t m, std::int64_t shift) {
  const auto n = static_cast<std::size_t>(m);
  IntMatrix out(n, n);
  for (std::int64_t a = 0; a < m; ++a) {
    const auto target = ((a + shift) % m + m) % m;
    out(static_cast<std::size_t>(target), static_cast<std::size_t>(a)) = 1;
  }
  return out;
}

VerticalMonodromy vertical_shift(const EquisingularDatum& datum, std::size_t branch) {
  require_valid(datum);
  if (branch >= datum.branch_count()) {
    throw InputError("vertical_shift: branch index " + std::to_string(branch) + " out of range");
  }
  const auto m = datum.multiplicity(branch);
  if (m < 2) {
    throw InputError("vertical_shift: branch " + std::to_string(branch + 1) +
                     " has multiplicity 1 and is not part of the singular set");
  }
  // Sheets are the m-th roots of eps / prod_{j != i} f_j^{m_j}; along a loop
  // around branch i each f_j winds I_ij times.
  std::int64_t winding = 0;
  for (std::size_t j = 0; j < datum.branch_count(); ++j) {
    if (j == branch) continue;
    winding = (winding + (datum.multiplicity(j) % m) * (datum.intersection(branch, j) % m)) % m;
  }
  return {branch, m, winding, cyclic_shift_matrix(m, winding)};
}

Boundary2Report boundary2_components(const FibreGraph& graph) {
  const EquisingularDatum& datum = graph.datum();
  require_singular(datum);
  const std::int64_t d = multiplicity_gcd(datum);
  const auto labels = graph.component_labels();
  const auto component_total = static_cast<std::size_t>(d);

  Boundary2Report report;
  report.chain_ok = true;
  for (std::size_t i = 0; i < datum.branch_count(); ++i) {
    const auto m = datum.multiplicity(i);
    if (m < 2) continue;
    const VerticalMonodromy vm = vertical_shift(datum, i);

    Boundary2Branch entry;
    entry.branch = i;
    entry.shift = vm.shift;
    entry.components = std::gcd(m, vm.shift);
    entry.coker = cokernel(vm.permutation_matrix - IntMatrix::identity(static_cast<std::size_t>(m)));
    if (entry.coker.free_rank != static_cast<std::size_t>(entry.components) ||
        !entry.coker.torsion.empty()) {
      throw InconsistencyError("boundary2: branch " + std::to_string(i + 1) +
                               " coker(A-I) has free rank " +
                               std::to_string(entry.coker.free_rank) + " and " +
                               std::to_string(entry.coker.torsion.size()) +
                               " torsion factors, orbit count gives " +
                               std::to_string(entry.components));
    }
    entry.divisible_by_d = entry.components % d == 0;

    // Each +k orbit (a residue class mod gcd(m,k)) must land in a single
    // F-component, and the branch must reach every component.
    bool well_defined = true;
    std::set<std::size_t> reached;
    for (std::int64_t c = 0; c < entry.components; ++c) {
      const std::size_t target = labels[graph.sheet_vertex(i, c)];
      for (std::int64_t a = c; a < m; a += entry.components) {
        well_defined = well_defined && labels[graph.sheet_vertex(i, a)] == target;
      }
      reached.insert(target);
    }
    entry.coverage = well_defined && reached.size() == component_total;
    report.chain_ok = report.chain_ok && entry.divisible_by_d && entry.coverage;
    report.branches.push_back(std::move(entry));
  }
  return report;
}

Boundary2Report boundary2_components(const EquisingularDatum& datum) {
  require_singular(datum);
  return boundary2_components(FibreGraph(datum));
}

UpperBoundVerdict check_upper_bound(const EquisingularDatum& datum) {
  require_singular(datum);
  const FibreSummary fibre = fibre_summary(datum);
  const TransversalData transversal = transversal_data(datum);

  UpperBoundVerdict out;
  out.hypothesis = fibre.b0 - 1 == transversal.total_mu_perp;
  out.conclusion_holds = true;
  out.cokernels_free = true;
  for (const auto& t : transversal.branches) {
    const VerticalMonodromy vm = vertical_shift(datum, t.branch);
    const auto coker =
        cokernel(vm.permutation_matrix - IntMatrix::identity(static_cast<std::size_t>(t.fibre_size)));
    out.cokernels_free = out.cokernels_free && coker.torsion.empty();
    out.conclusion_holds = out.conclusion_holds && vm.shift == 0;
  }
  out.conclusion_holds = out.conclusion_holds && out.cokernels_free;
  return out;
}

XrVerdict classify_xr(const EquisingularDatum& datum, const FibreSummary& fibre) {
  XrVerdict out;
  out.structural = datum.branch_count() == 1 && datum.delta(0) == 0;
  out.homological = fibre.b1 == 0;
  if (out.structural != out.homological) {
    throw InconsistencyError(std::string("classify_xr: structural verdict ") +
                             (out.structural ? "x^r" : "not x^r") + " but b1(F) = " +
                             std::to_string(fibre.b1));
  }
  if (out.structural) out.exponent = datum.multiplicity(0);
  return out;
}

XrVerdict classify_xr(const EquisingularDatum& datum) {
  return classify_xr(datum, fibre_summary(datum));
}

std::int64_t mu_reduced(const EquisingularDatum& datum) {
  require_valid(datum);
  if (!is_reduced(datum)) throw InputError("mu_reduced: datum is not reduced");
  const std::size_t r = datum.branch_count();
  std::int64_t delta_total = 0;
  for (std::size_t i = 0; i < r; ++i) {
    delta_total += datum.delta(i);
    for (std::size_t j = i + 1; j < r; ++j) delta_total += datum.intersection(i, j);
  }
  return 2 * delta_total - static_cast<std::int64_t>(r) + 1;
}

}  // namespace milnor
