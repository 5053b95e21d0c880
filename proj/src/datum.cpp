#include "milnor_lab/datum.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "milnor_lab/errors.hpp"

namespace milnor {

namespace {

using nlohmann::json;

std::string default_label(std::size_t i) { return "f" + std::to_string(i + 1); }

std::string pair_name(std::size_t i, std::size_t j) {
  return "I[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

std::int64_t get_int(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw InputError(where + ": missing key \"" + key + "\"");
  }
  if (!it->is_number_integer()) {
    throw InputError(where + ": \"" + key + "\" must be an integer");
  }
  return it->get<std::int64_t>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InputError(where + ": unknown key \"" + key + "\"");
    }
  }
}

EquisingularDatum direct_from_json(const json& doc) {
  reject_unknown_keys(doc, {"branches", "intersections"}, "curve-spec");
  auto branches = doc.find("branches");
  if (branches == doc.end() || !branches->is_array()) {
    throw InputError("curve-spec: \"branches\" must be an array");
  }
  EquisingularDatum datum;
  for (std::size_t i = 0; i < branches->size(); ++i) {
    const json& b = (*branches)[i];
    const std::string where = "branches[" + std::to_string(i) + "]";
    if (!b.is_object()) throw InputError(where + ": must be an object");
    reject_unknown_keys(b, {"label", "multiplicity", "delta"}, where);
    Branch branch;
    branch.label = default_label(i);
    if (auto label = b.find("label"); label != b.end()) {
      if (!label->is_string()) throw InputError(where + ": \"label\" must be a string");
      branch.label = label->get<std::string>();
    }
    branch.multiplicity = get_int(b, "multiplicity", where);
    branch.delta = get_int(b, "delta", where);
    datum.branches.push_back(std::move(branch));
  }

  const std::size_t r = datum.branches.size();
  auto rows = doc.find("intersections");
  if (rows == doc.end()) {
    // A single branch needs no pairwise data.
    if (r == 1) {
      datum.intersections = {{0}};
      return datum;
    }
    throw InputError("curve-spec: missing key \"intersections\"");
  }
  if (!rows->is_array() || rows->size() != r) {
    throw InputError("curve-spec: \"intersections\" must be an array of " + std::to_string(r) +
                     " rows");
  }
  datum.intersections.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    const json& row = (*rows)[i];
    if (!row.is_array() || row.size() != r) {
      throw InputError("intersections[" + std::to_string(i) + "]: must have " +
                       std::to_string(r) + " entries");
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (!row[j].is_number_integer()) {
        throw InputError("intersections[" + std::to_string(i) + "][" + std::to_string(j) +
                         "]: must be an integer");
      }
      datum.intersections[i][j] = row[j].get<std::int64_t>();
    }
  }
  return datum;
}

EquisingularDatum family_from_json(const json& doc) {
  auto family = doc.find("family");
  if (!family->is_string()) throw InputError("curve-spec: \"family\" must be a string");
  const std::string name = family->get<std::string>();

  if (name == "monomial") {
    reject_unknown_keys(doc, {"family", "p", "q"}, "monomial");
    return from_monomial(get_int(doc, "p", "monomial"), get_int(doc, "q", "monomial"));
  }
  if (name == "power") {
    reject_unknown_keys(doc, {"family", "base", "exponent"}, "power");
    auto base = doc.find("base");
    if (base == doc.end()) throw InputError("power: missing key \"base\"");
    return from_power(datum_from_json(*base), get_int(doc, "exponent", "power"));
  }
  if (name == "quasihomogeneous") {
    reject_unknown_keys(doc, {"family", "branches"}, "quasihomogeneous");
    auto branches = doc.find("branches");
    if (branches == doc.end() || !branches->is_array()) {
      throw InputError("quasihomogeneous: \"branches\" must be an array");
    }
    std::vector<QuasiHomBranchSpec> specs;
    for (std::size_t i = 0; i < branches->size(); ++i) {
      const json& b = (*branches)[i];
      const std::string where = "quasihomogeneous.branches[" + std::to_string(i) + "]";
      if (!b.is_object()) throw InputError(where + ": must be an object");
      reject_unknown_keys(b, {"a", "b", "multiplicity"}, where);
      specs.push_back({get_int(b, "a", where), get_int(b, "b", where),
                       get_int(b, "multiplicity", where)});
    }
    return from_quasihomogeneous(specs);
  }
  throw InputError("curve-spec: unknown family \"" + name + "\"");
}

}  // namespace

bool EquisingularDatum::operator==(const EquisingularDatum& other) const {
  if (branches.size() != other.branches.size()) return false;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (branches[i].multiplicity != other.branches[i].multiplicity ||
        branches[i].delta != other.branches[i].delta) {
      return false;
    }
  }
  return intersections == other.intersections;
}

std::vector<std::string> validate(const EquisingularDatum& datum) {
  std::vector<std::string> violations;
  const std::size_t r = datum.branches.size();
  if (r == 0) violations.emplace_back("r ≥ 1 required: no branches");

  for (std::size_t i = 0; i < r; ++i) {
    const Branch& b = datum.branches[i];
    if (b.multiplicity < 1) {
      violations.push_back("branch " + std::to_string(i + 1) + ": multiplicity ≥ 1 required (got " +
                           std::to_string(b.multiplicity) + ")");
    }
    if (b.delta < 0) {
      violations.push_back("branch " + std::to_string(i + 1) + ": delta ≥ 0 required (got " +
                           std::to_string(b.delta) + ")");
    }
  }

  bool square = datum.intersections.size() == r;
  for (const auto& row : datum.intersections) square = square && row.size() == r;
  if (!square) {
    violations.push_back("intersections must be a " + std::to_string(r) + "×" + std::to_string(r) +
                         " matrix");
    return violations;
  }

  for (std::size_t i = 0; i < r; ++i) {
    if (datum.intersections[i][i] != 0) {
      violations.push_back("diagonal " + pair_name(i, i) + " must be 0");
    }
    for (std::size_t j = i + 1; j < r; ++j) {
      const auto upper = datum.intersections[i][j];
      const auto lower = datum.intersections[j][i];
      if (upper != lower) {
        violations.push_back("symmetry: " + pair_name(i, j) + "=" + std::to_string(upper) +
                             " but " + pair_name(j, i) + "=" + std::to_string(lower));
      }
      if (upper < 1 || lower < 1) {
        violations.push_back(pair_name(i, j) + " ≥ 1 required");
      }
    }
  }
  return violations;
}

void require_valid(const EquisingularDatum& datum) {
  const auto violations = validate(datum);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid datum:";
  for (const auto& v : violations) msg << "\n  - " << v;
  throw InputError(msg.str());
}

void validate_bounds(const CorpusBounds& bounds) {
  if (bounds.max_branches < 1) throw InputError("max-branches must be ≥ 1");
  if (bounds.max_multiplicity < 1) throw InputError("max-mult must be ≥ 1");
  if (bounds.max_delta < 0) throw InputError("max-delta must be ≥ 0");
  if (bounds.max_intersection < 1) throw InputError("max-int must be ≥ 1");
}

EquisingularDatum from_monomial(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) throw InputError("monomial: p and q must be ≥ 1");
  return EquisingularDatum{{{"f1", p, 0}, {"f2", q, 0}}, {{0, 1}, {1, 0}}};
}

EquisingularDatum from_power(const EquisingularDatum& base, std::int64_t exponent) {
  if (exponent < 1) throw InputError("power: exponent must be ≥ 1");
  require_valid(base);
  EquisingularDatum out = base;
  for (auto& b : out.branches) b.multiplicity *= exponent;
  return out;
}

EquisingularDatum from_quasihomogeneous(const std::vector<QuasiHomBranchSpec>& specs) {
  if (specs.empty()) throw InputError("quasihomogeneous: at least one branch required");
  EquisingularDatum datum;
  const std::size_t r = specs.size();
  for (std::size_t i = 0; i < r; ++i) {
    const auto& s = specs[i];
    if (s.a < 1 || s.b < 1) throw InputError("quasihomogeneous: a and b must be ≥ 1");
    if (std::gcd(s.a, s.b) != 1) {
      throw InputError("quasihomogeneous: (a,b) = (" + std::to_string(s.a) + "," +
                       std::to_string(s.b) + ") is not coprime");
    }
    datum.branches.push_back({default_label(i), s.multiplicity, (s.a - 1) * (s.b - 1) / 2});
  }
  datum.intersections.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const auto& u = specs[i];
      const auto& v = specs[j];
      const bool same = u.a == v.a && u.b == v.b;
      const auto value = same ? u.a * u.b : std::min(u.a * v.b, v.a * u.b);
      datum.intersections[i][j] = datum.intersections[j][i] = value;
    }
  }
  require_valid(datum);
  return datum;
}

EquisingularDatum datum_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("curve-spec: document must be a JSON object");
  EquisingularDatum datum =
      doc.contains("family") ? family_from_json(doc) : direct_from_json(doc);
  require_valid(datum);
  return datum;
}

EquisingularDatum parse_datum(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return datum_from_json(doc);
}

nlohmann::ordered_json datum_to_json(const EquisingularDatum& datum) {
  nlohmann::ordered_json branches = nlohmann::ordered_json::array();
  for (const auto& b : datum.branches) {
    branches.push_back({{"label", b.label}, {"multiplicity", b.multiplicity}, {"delta", b.delta}});
  }
  return {{"branches", branches}, {"intersections", datum.intersections}};
}

std::string serialize_datum(const EquisingularDatum& datum) { return datum_to_json(datum).dump(); }

std::vector<std::int64_t> datum_key(const EquisingularDatum& datum) {
  const std::size_t r = datum.branch_count();
  std::vector<std::int64_t> key;
  key.reserve(2 * r + r * (r - 1) / 2);
  for (const auto& b : datum.branches) {
    key.push_back(b.multiplicity);
    key.push_back(b.delta);
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) key.push_back(datum.intersections[i][j]);
  }
  return key;
}

namespace {

EquisingularDatum permuted(const EquisingularDatum& datum, const std::vector<std::size_t>& order) {
  const std::size_t r = order.size();
  EquisingularDatum out;
  out.branches.reserve(r);
  for (auto i : order) out.branches.push_back(datum.branches[i]);
  out.intersections.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      out.intersections[a][b] = datum.intersections[order[a]][order[b]];
    }
  }
  return out;
}

bool is_canonical(const EquisingularDatum& datum) {
  std::vector<std::size_t> order(datum.branch_count());
  std::iota(order.begin(), order.end(), 0);
  const auto own = datum_key(datum);
  while (std::next_permutation(order.begin(), order.end())) {
    if (datum_key(permuted(datum, order)) < own) return false;
  }
  return true;
}

}  // namespace

EquisingularDatum canonical_form(const EquisingularDatum& datum) {
  std::vector<std::size_t> order(datum.branch_count());
  std::iota(order.begin(), order.end(), 0);
  EquisingularDatum best = datum;
  auto best_key = datum_key(datum);
  while (std::next_permutation(order.begin(), order.end())) {
    auto candidate = permuted(datum, order);
    auto key = datum_key(candidate);
    if (key < best_key) {
      best_key = std::move(key);
      best = std::move(candidate);
    }
  }
  return best;
}

std::vector<EquisingularDatum> enumerate_corpus(const CorpusBounds& bounds) {
  validate_bounds(bounds);

  // Branch types in (m, delta) lexicographic order; a nondecreasing index
  // sequence of types followed by an I odometer yields datum_key order.
  std::vector<Branch> types;
  for (std::int64_t m = 1; m <= bounds.max_multiplicity; ++m) {
    for (std::int64_t d = 0; d <= bounds.max_delta; ++d) types.push_back({"", m, d});
  }

  std::vector<EquisingularDatum> corpus;
  for (std::size_t r = 1; r <= static_cast<std::size_t>(bounds.max_branches); ++r) {
    const std::size_t pairs = r * (r - 1) / 2;
    std::vector<std::size_t> type_index(r, 0);
    while (true) {
      EquisingularDatum datum;
      for (std::size_t i = 0; i < r; ++i) {
        datum.branches.push_back(types[type_index[i]]);
        datum.branches.back().label = default_label(i);
      }
      std::vector<std::int64_t> values(pairs, 1);
      while (true) {
        datum.intersections.assign(r, std::vector<std::int64_t>(r, 0));
        std::size_t k = 0;
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = i + 1; j < r; ++j, ++k) {
            datum.intersections[i][j] = datum.intersections[j][i] = values[k];
          }
        }
        if (is_canonical(datum)) corpus.push_back(datum);

        // Advance the odometer, last pair fastest.
        std::size_t pos = pairs;
        while (pos > 0 && values[pos - 1] == bounds.max_intersection) values[--pos] = 1;
        if (pos == 0) break;
        ++values[pos - 1];
      }

      // Next nondecreasing type sequence, last branch fastest.
      std::size_t pos = r;
      while (pos > 0 && type_index[pos - 1] + 1 == types.size()) --pos;
      if (pos == 0) break;
      ++type_index[pos - 1];
      for (std::size_t i = pos; i < r; ++i) type_index[i] = type_index[pos - 1];
    }
  }
  return corpus;
}

}  // namespace milnor
