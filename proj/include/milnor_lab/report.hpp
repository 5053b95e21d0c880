#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "milnor_lab/datum.hpp"

namespace milnor {

inline constexpr std::string_view kVersion = "0.1.0";

struct AnalyzeOptions {
  bool dump_snf = false;
};

// Full analysis of one datum with a fixed key order. Throws
// InconsistencyError if any cross-check fails.
nlohmann::ordered_json analyze(const EquisingularDatum& datum, const AnalyzeOptions& options = {});

// Properties checked by `verify`. The chi-form criterion is opt-in.
inline constexpr std::string_view kChiFormProperty = "prop2-chi-form";
const std::vector<std::string>& default_properties();
const std::vector<std::string>& known_properties();

// Throws InputError for unknown names; empty input selects the defaults.
std::vector<std::string> resolve_properties(const std::vector<std::string>& requested);

struct Violation {
  std::size_t index = 0;  // position in corpus order
  std::string datum;      // serialized direct form
  std::string property;
  std::string expected;
  std::string got;
  std::string label;      // "documented" for known chi-form findings

  bool operator==(const Violation&) const = default;
};

struct SweepResult {
  CorpusBounds bounds;
  std::vector<std::string> properties;
  std::size_t datums_checked = 0;
  std::vector<Violation> violations;  // corpus order, then property order
  std::chrono::duration<double> elapsed{0};
};

std::vector<Violation> check_datum(const EquisingularDatum& datum, std::size_t index,
                                   const std::vector<std::string>& properties);

// Runs the selected properties over enumerate_corpus(bounds) with `jobs`
// worker threads. The violation list does not depend on `jobs`.
SweepResult run_sweep(const CorpusBounds& bounds, const std::vector<std::string>& properties,
                      std::size_t jobs);

// Excludes elapsed time so the output is reproducible.
nlohmann::ordered_json sweep_to_json(const SweepResult& result);

}  // namespace milnor
