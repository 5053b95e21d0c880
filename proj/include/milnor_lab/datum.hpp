#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace milnor {

// One reduced irreducible factor f_i of f = f_1^{m_1} ... f_r^{m_r}.
struct Branch {
  std::string label;
  std::int64_t multiplicity = 1;  // exponent m_i
  std::int64_t delta = 0;         // delta invariant of the reduced branch

  bool operator==(const Branch&) const = default;
};

// Combinatorial equisingularity datum of a plane curve germ. The diagonal
// of `intersections` is unused and kept at 0.
struct EquisingularDatum {
  std::vector<Branch> branches;
  std::vector<std::vector<std::int64_t>> intersections;

  std::size_t branch_count() const { return branches.size(); }
  std::int64_t multiplicity(std::size_t i) const { return branches[i].multiplicity; }
  std::int64_t delta(std::size_t i) const { return branches[i].delta; }
  std::int64_t intersection(std::size_t i, std::size_t j) const {
    return intersections[i][j];
  }

  // Labels do not take part in equality; two datums are equal when their
  // numeric data agree in the given branch order.
  bool operator==(const EquisingularDatum& other) const;
};

// Branch y^a = x^b parametrized by (t^a, t^b).
struct QuasiHomBranchSpec {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::int64_t multiplicity = 1;
};

struct CorpusBounds {
  std::int64_t max_branches = 1;
  std::int64_t max_multiplicity = 1;
  std::int64_t max_delta = 0;
  std::int64_t max_intersection = 1;
};

// Empty result means the datum is valid; otherwise one message per violated
// invariant.
std::vector<std::string> validate(const EquisingularDatum& datum);

// Throws InputError listing every violation.
void require_valid(const EquisingularDatum& datum);

// Throws InputError when a bound is out of range.
void validate_bounds(const CorpusBounds& bounds);

EquisingularDatum from_monomial(std::int64_t p, std::int64_t q);
EquisingularDatum from_power(const EquisingularDatum& base, std::int64_t exponent);
EquisingularDatum from_quasihomogeneous(const std::vector<QuasiHomBranchSpec>& specs);

// Parses a curve-spec document (direct or family form). Syntax errors carry
// the byte position; the result always passes validate().
EquisingularDatum parse_datum(std::string_view text);
EquisingularDatum datum_from_json(const nlohmann::json& doc);

// Direct-form document; parse_datum(serialize_datum(d)) == d.
nlohmann::ordered_json datum_to_json(const EquisingularDatum& datum);
std::string serialize_datum(const EquisingularDatum& datum);

// Lexicographic key (m_1, d_1, ..., m_r, d_r, I upper triangle row-major).
std::vector<std::int64_t> datum_key(const EquisingularDatum& datum);

// Same datum with branches reordered so that datum_key is minimal over all
// branch permutations.
EquisingularDatum canonical_form(const EquisingularDatum& datum);

// Every valid datum within the bounds, one per branch-permutation class, in
// canonical order: branch count ascending, then datum_key ascending.
std::vector<EquisingularDatum> enumerate_corpus(const CorpusBounds& bounds);

}  // namespace milnor
