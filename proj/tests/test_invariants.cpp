#include <numeric>

#include "doctest.h"
#include "milnor_lab/datum.hpp"
#include "milnor_lab/errors.hpp"
#include "milnor_lab/invariants.hpp"
#include "oracles.hpp"

using namespace milnor;

namespace {

EquisingularDatum x_power(std::int64_t r) { return {{{"x", r, 0}}, {{0}}}; }

const EquisingularDatum kCusp{{{"c", 1, 1}}, {{0}}};
const EquisingularDatum kCuspSquared{{{"c", 2, 1}}, {{0}}};
const EquisingularDatum kCuspSquaredLine{{{"c", 2, 1}, {"l", 1, 0}}, {{0, 3}, {3, 0}}};
const EquisingularDatum kXSquaredY{{{"x", 2, 0}, {"y", 1, 0}}, {{0, 1}, {1, 0}}};

}  // namespace

TEST_CASE("transversal_data") {
  const auto x5 = transversal_data(x_power(5));
  REQUIRE(x5.branches.size() == 1);
  CHECK(x5.branches[0].fibre_size == 5);
  CHECK(x5.branches[0].mu_perp == 4);

  const auto mono = transversal_data(from_monomial(2, 3));
  REQUIRE(mono.branches.size() == 2);
  CHECK(mono.branches[0].mu_perp == 1);
  CHECK(mono.branches[1].mu_perp == 2);
  CHECK(mono.total_points == 5);

  const auto reduced = transversal_data(from_monomial(1, 1));
  CHECK(reduced.branches.empty());
  CHECK(reduced.total_points == 0);

  const auto mixed = transversal_data(kXSquaredY);
  REQUIRE(mixed.branches.size() == 1);
  CHECK(mixed.branches[0].branch == 0);
}

TEST_CASE("beta") {
  for (std::int64_t r = 2; r <= 6; ++r) {
    const auto b = beta(x_power(r));
    CHECK(b.beta == 0);
    CHECK(b.criteria.beta_zero);
    CHECK(b.criteria.homology_form);
    CHECK_FALSE(b.criteria.chi_form);  // chi = r, 1 - (r-1) = 2 - r
    CHECK(b.verdict_bobadilla);
  }
  // F = C* with two transversal points: 0 -> Z -> H1(F,F') -> Z^2 -> Z -> 0.
  const auto xxy = beta(kXSquaredY);
  CHECK(xxy.beta == 2);
  CHECK_FALSE(xxy.verdict_bobadilla);

  // F = two annuli, two transversal points on each.
  CHECK(beta(from_monomial(2, 2)).beta == 4);

  for (std::int64_t p = 2; p <= 12; ++p) {
    for (std::int64_t q = 2; q <= 12; ++q) CHECK(beta(from_monomial(p, q)).beta == p + q);
  }

  CHECK_THROWS_AS(beta(from_monomial(1, 1)), UndefinedInvariant);
  CHECK_THROWS_AS(beta(kCusp), UndefinedInvariant);
}

TEST_CASE("vertical_shift") {
  const auto single = vertical_shift(kCuspSquared, 0);
  CHECK(single.shift == 0);
  CHECK(single.permutation_matrix == IntMatrix::identity(2));

  CHECK(vertical_shift(from_monomial(2, 3), 0).shift == 1);
  CHECK(vertical_shift(from_monomial(2, 3), 1).shift == 2);
  CHECK(vertical_shift(kCuspSquaredLine, 0).shift == 1);
  CHECK(vertical_shift(from_monomial(4, 6), 0).shift == 2);

  CHECK_THROWS_AS(vertical_shift(kCuspSquaredLine, 1), InputError);
  CHECK_THROWS_AS(vertical_shift(kCuspSquaredLine, 7), InputError);

  SUBCASE("numeric root tracking agrees up to orientation") {
    for (const auto& d : enumerate_corpus({3, 4, 1, 3})) {
      for (std::size_t i = 0; i < d.branch_count(); ++i) {
        const auto m = d.multiplicity(i);
        if (m < 2) continue;
        std::vector<std::pair<std::int64_t, std::int64_t>> others;
        for (std::size_t j = 0; j < d.branch_count(); ++j) {
          if (j != i) others.emplace_back(d.multiplicity(j), d.intersection(i, j));
        }
        const auto tracked = oracle::tracked_root_shift(m, others);
        const auto k = vertical_shift(d, i).shift;
        CAPTURE(serialize_datum(d));
        CHECK((tracked + k) % m == 0);
      }
    }
  }
}

TEST_CASE("boundary2_components") {
  const auto x3 = boundary2_components(x_power(3));
  REQUIRE(x3.branches.size() == 1);
  CHECK(x3.branches[0].components == 3);
  CHECK(x3.branches[0].coker == CokernelPresentation{3, {}});
  CHECK(x3.chain_ok);

  const auto m23 = boundary2_components(from_monomial(2, 3));
  REQUIRE(m23.branches.size() == 2);
  CHECK(m23.branches[0].shift == 1);
  CHECK(m23.branches[0].components == 1);
  CHECK(m23.branches[0].coker == CokernelPresentation{1, {}});

  const auto m46 = boundary2_components(from_monomial(4, 6));
  CHECK(m46.branches[0].shift == 2);
  CHECK(m46.branches[0].components == 2);
  CHECK(m46.chain_ok);

  CHECK_THROWS_AS(boundary2_components(from_monomial(1, 1)), UndefinedInvariant);
}

TEST_CASE("check_upper_bound") {
  const auto x4 = check_upper_bound(x_power(4));
  CHECK(x4.hypothesis);
  CHECK(x4.conclusion_holds);

  const auto cusp2 = check_upper_bound(kCuspSquared);
  CHECK(cusp2.hypothesis);
  CHECK(cusp2.conclusion_holds);

  const auto m22 = check_upper_bound(from_monomial(2, 2));
  CHECK_FALSE(m22.hypothesis);
}

TEST_CASE("classify_xr and mu_reduced") {
  const auto x7 = classify_xr(x_power(7));
  CHECK(x7.structural);
  CHECK(x7.homological);
  CHECK(x7.exponent == 7);

  const auto cusp2 = classify_xr(kCuspSquared);
  CHECK_FALSE(cusp2.structural);
  CHECK(fibre_summary(kCuspSquared).b1 == 4);

  CHECK_FALSE(classify_xr(from_monomial(1, 1)).homological);
  CHECK(fibre_summary(from_monomial(1, 1)).b1 == 1);

  // A summary contradicting the structure must be reported, not hidden.
  CHECK_THROWS_AS(classify_xr(x_power(3), FibreSummary{3, 3, 1, 2, 2}), InconsistencyError);

  CHECK(mu_reduced(kCusp) == 2);
  CHECK(mu_reduced(from_monomial(1, 1)) == 1);
  CHECK(mu_reduced(x_power(1)) == 0);
  CHECK_THROWS_AS(mu_reduced(kCuspSquared), InputError);
}

TEST_CASE("invariant properties over the corpus") {
  std::size_t chi_form_disagreements = 0;
  for (const auto& d : enumerate_corpus({3, 4, 2, 2})) {
    CAPTURE(serialize_datum(d));
    const auto fibre = fibre_summary(d);
    CHECK_NOTHROW(classify_xr(d, fibre));
    if (is_reduced(d)) {
      CHECK(fibre.b1 == mu_reduced(d));
      continue;
    }
    const auto b = beta(d, fibre);
    CHECK(b.beta >= 0);
    CHECK(b.criteria.beta_zero == b.criteria.homology_form);
    CHECK(b.criteria.beta_zero == b.verdict_bobadilla);
    if (b.criteria.chi_form != b.criteria.beta_zero) ++chi_form_disagreements;

    const auto boundary = boundary2_components(d);
    CHECK(boundary.chain_ok);
    for (const auto& entry : boundary.branches) {
      CHECK(entry.components == std::gcd(d.multiplicity(entry.branch), entry.shift));
      CHECK(entry.coker.torsion.empty());
      CHECK(entry.components % fibre.components == 0);
    }
    const auto ub = check_upper_bound(d);
    if (ub.hypothesis) CHECK(ub.conclusion_holds);
  }
  // x^2, x^3, x^4 plus x^2 y and the m=(1,4) mixed case; see the acceptance suite.
  CHECK(chi_form_disagreements == 5);
}
