#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "milnor_lab/datum.hpp"
#include "milnor_lab/fibre_graph.hpp"
#include "milnor_lab/smith.hpp"

namespace milnor {

// Transversal Milnor fibre of x^{m_i} along a singular branch (m_i >= 2).
struct TransversalBranch {
  std::size_t branch = 0;
  std::int64_t fibre_size = 0;  // m_i points
  std::int64_t mu_perp = 0;     // m_i - 1
};

struct TransversalData {
  std::vector<TransversalBranch> branches;
  std::int64_t total_points = 0;
  std::int64_t total_mu_perp = 0;
};

// Cyclic permutation of the transversal fibre obtained by going once around
// branch i: sheet a -> a + shift (mod m_i).
struct VerticalMonodromy {
  std::size_t branch = 0;
  std::int64_t multiplicity = 0;
  std::int64_t shift = 0;  // k_i in [0, m_i)
  IntMatrix permutation_matrix;
};

struct BetaCriteria {
  bool beta_zero = false;        // C1
  bool chi_form = false;         // C2: chi(F) = 1 - sum mu_perp
  bool homology_form = false;    // C3: b1 = 0 and b0 - 1 = sum mu_perp
};

struct BetaReport {
  std::int64_t beta = 0;
  std::int64_t b0 = 0;
  std::int64_t b1 = 0;
  std::int64_t chi = 0;
  std::int64_t total_transversal_points = 0;
  std::int64_t total_mu_perp = 0;
  std::size_t singular_branch_count = 0;
  BetaCriteria criteria;
  bool verdict_bobadilla = false;  // datum is of x^r type
};

struct Boundary2Branch {
  std::size_t branch = 0;
  std::int64_t shift = 0;
  std::int64_t components = 0;  // gcd(m_i, k_i)
  CokernelPresentation coker;   // of A_i - I
  bool divisible_by_d = false;
  bool coverage = false;
};

struct Boundary2Report {
  std::vector<Boundary2Branch> branches;
  bool chain_ok = false;
};

struct UpperBoundVerdict {
  bool hypothesis = false;        // b0 - 1 = sum mu_perp
  bool conclusion_holds = false;  // every k_i = 0; vacuous when hypothesis fails
  bool cokernels_free = false;
};

struct XrVerdict {
  bool structural = false;  // r = 1 and delta_1 = 0
  bool homological = false; // b1(F) = 0
  std::int64_t exponent = 0; // m_1 when the datum is x^r, else 0
};

TransversalData transversal_data(const EquisingularDatum& datum);

// Throws UndefinedInvariant for reduced data (all m_i = 1).
BetaReport beta(const EquisingularDatum& datum);
BetaReport beta(const EquisingularDatum& datum, const FibreSummary& fibre);

// k_i = Sum_{j != i} m_j I_ij mod m_i. Throws InputError unless m_i >= 2.
VerticalMonodromy vertical_shift(const EquisingularDatum& datum, std::size_t branch);

// Cyclic shift on Z^m: e_a -> e_{a + shift mod m}.
IntMatrix cyclic_shift_matrix(std::int64_t m, std::int64_t shift);

Boundary2Report boundary2_components(const EquisingularDatum& datum);
Boundary2Report boundary2_components(const FibreGraph& graph);

UpperBoundVerdict check_upper_bound(const EquisingularDatum& datum);

// Throws InconsistencyError if the structural and homological verdicts differ.
XrVerdict classify_xr(const EquisingularDatum& datum);
XrVerdict classify_xr(const EquisingularDatum& datum, const FibreSummary& fibre);

// 2 delta_tot - r + 1 for reduced curves; throws InputError otherwise.
std::int64_t mu_reduced(const EquisingularDatum& datum);

bool is_reduced(const EquisingularDatum& datum);

}  // namespace milnor
