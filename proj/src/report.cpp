#include "milnor_lab/report.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <thread>

#include "milnor_lab/errors.hpp"
#include "milnor_lab/fibre_graph.hpp"
#include "milnor_lab/invariants.hpp"
#include "milnor_lab/network.hpp"

namespace milnor {

namespace {

using ojson = nlohmann::ordered_json;

ojson big_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

ojson coker_to_json(const CokernelPresentation& c) {
  ojson torsion = ojson::array();
  for (const auto& t : c.torsion) torsion.push_back(big_to_json(t));
  return {{"free_rank", c.free_rank}, {"torsion", torsion}};
}

ojson network_to_json(const std::vector<NetworkNode>& network) {
  ojson out = ojson::array();
  for (const auto& node : network) {
    const LocalFibre local = local_fibre(node.p, node.q);
    const bool cross = node.kind == NetworkNode::Kind::cross;
    ojson branches = cross ? ojson::array({node.first + 1, node.second + 1})
                           : ojson::array({node.first + 1});
    out.push_back({{"kind", cross ? "cross" : "self_node"},
                   {"branches", branches},
                   {"p", node.p},
                   {"q", node.q},
                   {"copies", node.copies},
                   {"annuli_per_copy", local.components}});
  }
  return out;
}

ojson fibre_to_json(const FibreSummary& s) {
  return {{"d", s.components},
          {"b0", s.b0},
          {"b1", s.b1},
          {"chi", s.chi},
          {"chi_closed_form", s.chi_closed_form}};
}

ojson undefined_section() { return {{"undefined", "isolated singularity"}}; }

std::string to_text(bool b) { return b ? "true" : "false"; }

bool is_xr(const EquisingularDatum& datum) {
  return datum.branch_count() == 1 && datum.delta(0) == 0;
}

// Raw graph values without the throwing cross-checks of fibre_summary, so
// that each property reports its own disagreement.
FibreSummary raw_summary(const FibreGraph& graph) {
  FibreSummary s;
  s.components = static_cast<std::int64_t>(graph.component_count());
  s.b0 = s.components;
  s.chi = graph.euler_characteristic();
  s.chi_closed_form = euler_characteristic_closed(graph.datum());
  s.b1 = s.b0 - s.chi;
  return s;
}

std::string triple(std::int64_t a, std::int64_t b, std::int64_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

ojson analyze(const EquisingularDatum& datum, const AnalyzeOptions& options) {
  require_valid(datum);
  const FibreGraph graph(datum);
  const FibreSummary fibre = fibre_summary(graph);
  const GcdReduction reduction = divide_by_gcd(datum);
  const ComponentMonodromy monodromy = component_monodromy(graph);
  const TransversalData transversal = transversal_data(datum);
  const XrVerdict xr = classify_xr(datum, fibre);

  ojson report;
  report["datum"] = datum_to_json(datum);
  report["network"] = network_to_json(graph.network());
  report["fibre"] = fibre_to_json(fibre);
  report["reduced"] = {{"d", reduction.d}, {"datum", datum_to_json(reduction.reduced)}};
  report["monodromy"] = {{"permutation", monodromy.permutation},
                         {"cycle_type", monodromy.cycle_type}};

  ojson transversal_json = ojson::array();
  for (const auto& t : transversal.branches) {
    transversal_json.push_back(
        {{"branch", t.branch + 1}, {"fibre_size", t.fibre_size}, {"mu_perp", t.mu_perp}});
  }
  report["transversal"] = {{"branches", transversal_json},
                           {"total_points", transversal.total_points},
                           {"total_mu_perp", transversal.total_mu_perp}};

  if (is_reduced(datum)) {
    report["beta"] = undefined_section();
    report["vertical"] = ojson::array();
    report["boundary2"] = undefined_section();
    report["upper_bound"] = undefined_section();
  } else {
    const BetaReport b = beta(datum, fibre);
    report["beta"] = {{"value", b.beta},
                      {"b0", b.b0},
                      {"b1", b.b1},
                      {"chi", b.chi},
                      {"total_transversal_points", b.total_transversal_points},
                      {"total_mu_perp", b.total_mu_perp},
                      {"singular_branch_count", b.singular_branch_count},
                      {"criteria",
                       {{"C1", b.criteria.beta_zero},
                        {"C2", b.criteria.chi_form},
                        {"C3", b.criteria.homology_form}}},
                      {"verdict_bobadilla", b.verdict_bobadilla}};

    const Boundary2Report boundary = boundary2_components(graph);
    ojson vertical = ojson::array();
    for (const auto& entry : boundary.branches) {
      vertical.push_back({{"branch", entry.branch + 1},
                          {"multiplicity", datum.multiplicity(entry.branch)},
                          {"k", entry.shift},
                          {"components", entry.components},
                          {"coker", coker_to_json(entry.coker)},
                          {"divisible_by_d", entry.divisible_by_d},
                          {"coverage", entry.coverage}});
    }
    report["vertical"] = vertical;
    report["boundary2"] = {{"chain_ok", boundary.chain_ok}};

    const UpperBoundVerdict ub = check_upper_bound(datum);
    const char* status = !ub.hypothesis        ? "hypothesis not attained"
                         : ub.conclusion_holds ? "conclusion verified"
                                               : "conclusion fails";
    report["upper_bound"] = {{"hypothesis", ub.hypothesis},
                             {"conclusion_holds", ub.conclusion_holds},
                             {"cokernels_free", ub.cokernels_free},
                             {"status", status}};
  }

  report["xr_verdict"] = {{"structural", xr.structural},
                          {"homological", xr.homological},
                          {"exponent", xr.structural ? ojson(xr.exponent) : ojson(nullptr)}};

  if (options.dump_snf) {
    ojson snf = ojson::array();
    for (const auto& t : transversal.branches) {
      const VerticalMonodromy vm = vertical_shift(datum, t.branch);
      const auto decomposition = smith_normal_form(
          vm.permutation_matrix - IntMatrix::identity(static_cast<std::size_t>(t.fibre_size)));
      ojson diagonal = ojson::array();
      for (const auto& x : decomposition.diagonal()) diagonal.push_back(big_to_json(x));
      snf.push_back({{"branch", t.branch + 1}, {"diagonal", diagonal}});
    }
    report["snf"] = snf;
  }

  report["version"] = std::string(kVersion);
  return report;
}

const std::vector<std::string>& default_properties() {
  static const std::vector<std::string> names = {
      "prop1-xr",       "lemma-gcd",      "lemma-reduced", "chi-two-route",
      "mu-classical",   "monodromy-cycle", "corollary-beta", "beta-nonneg",
      "beta-criteria",  "boundary2",      "upper-bound"};
  return names;
}

const std::vector<std::string>& known_properties() {
  static const std::vector<std::string> names = [] {
    auto all = default_properties();
    all.emplace_back(kChiFormProperty);
    return all;
  }();
  return names;
}

std::vector<std::string> resolve_properties(const std::vector<std::string>& requested) {
  if (requested.empty()) return default_properties();
  std::vector<std::string> out;
  // Keep the canonical order so output does not depend on flag order.
  for (const auto& name : known_properties()) {
    if (std::find(requested.begin(), requested.end(), name) != requested.end()) out.push_back(name);
  }
  for (const auto& name : requested) {
    if (std::find(out.begin(), out.end(), name) == out.end()) {
      throw InputError("unknown property \"" + name + "\"");
    }
  }
  return out;
}

std::vector<Violation> check_datum(const EquisingularDatum& datum, std::size_t index,
                                   const std::vector<std::string>& properties) {
  std::vector<Violation> out;
  const std::string text = serialize_datum(datum);
  auto wants = [&](std::string_view name) {
    return std::find(properties.begin(), properties.end(), name) != properties.end();
  };
  auto report = [&](std::string_view property, std::string expected, std::string got,
                    std::string label = {}) {
    out.push_back({index, text, std::string(property), std::move(expected), std::move(got),
                   std::move(label)});
  };
  // Runs one property; an InconsistencyError inside it is that property's violation.
  auto guarded = [&](std::string_view property, const std::function<void()>& body) {
    if (!wants(property)) return;
    try {
      body();
    } catch (const InconsistencyError& e) {
      report(property, "consistent routes", e.what());
    }
  };

  const FibreGraph graph(datum);
  const FibreSummary fibre = raw_summary(graph);
  const std::int64_t d = multiplicity_gcd(datum);
  const bool singular = !is_reduced(datum);

  guarded("prop1-xr", [&] {
    if ((fibre.b1 == 0) != is_xr(datum)) {
      report("prop1-xr", "b1 = 0 iff r = 1 and delta = 0",
             "b1 = " + std::to_string(fibre.b1) + ", x^r = " + to_text(is_xr(datum)));
    }
  });
  guarded("lemma-gcd", [&] {
    if (fibre.components != d) {
      report("lemma-gcd", "b0 = " + std::to_string(d), "b0 = " + std::to_string(fibre.components));
    }
  });
  guarded("chi-two-route", [&] {
    if (fibre.chi != fibre.chi_closed_form) {
      report("chi-two-route", "chi = " + std::to_string(fibre.chi_closed_form),
             "V - E = " + std::to_string(fibre.chi));
    }
  });
  guarded("lemma-reduced", [&] {
    const GcdReduction reduction = divide_by_gcd(datum);
    const FibreSummary small = raw_summary(FibreGraph(reduction.reduced));
    const auto want = triple(reduction.d * small.b0, reduction.d * small.b1, reduction.d * small.chi);
    const auto have = triple(fibre.b0, fibre.b1, fibre.chi);
    if (want != have) report("lemma-reduced", "(b0,b1,chi) = " + want, have);
    if (small.b0 != 1) {
      report("lemma-reduced", "reduced datum connected", "b0 = " + std::to_string(small.b0));
    }
  });
  guarded("mu-classical", [&] {
    if (singular) return;
    const auto mu = mu_reduced(datum);
    if (fibre.b1 != mu) {
      report("mu-classical", "b1 = " + std::to_string(mu), "b1 = " + std::to_string(fibre.b1));
    }
  });
  guarded("monodromy-cycle", [&] {
    const ComponentMonodromy mono = component_monodromy(graph);
    if (mono.cycle_type != std::vector<std::size_t>{static_cast<std::size_t>(d)}) {
      report("monodromy-cycle", "cycle type [" + std::to_string(d) + "]",
             std::to_string(mono.cycle_type.size()) + " cycles");
    }
  });

  if (!singular) return out;

  const BetaReport b = beta(datum, fibre);
  guarded("corollary-beta", [&] {
    if (b.criteria.beta_zero != b.verdict_bobadilla) {
      report("corollary-beta", "beta = 0 iff x^r",
             "beta = " + std::to_string(b.beta) + ", x^r = " + to_text(b.verdict_bobadilla));
    }
  });
  guarded("beta-nonneg", [&] {
    if (b.beta < 0) report("beta-nonneg", "beta >= 0", "beta = " + std::to_string(b.beta));
  });
  guarded("beta-criteria", [&] {
    if (b.criteria.beta_zero != b.criteria.homology_form) {
      report("beta-criteria", "C1 iff C3",
             "C1 = " + to_text(b.criteria.beta_zero) + ", C3 = " + to_text(b.criteria.homology_form));
    }
  });
  guarded("boundary2", [&] {
    const Boundary2Report boundary = boundary2_components(graph);
    for (const auto& entry : boundary.branches) {
      const std::string where = "branch " + std::to_string(entry.branch + 1) + ": ";
      if (!entry.divisible_by_d) {
        report("boundary2", where + "d | gcd(m,k)",
               "d = " + std::to_string(d) + ", gcd = " + std::to_string(entry.components));
      }
      if (!entry.coverage) report("boundary2", where + "component coverage", "not covered");
    }
  });
  guarded("upper-bound", [&] {
    const UpperBoundVerdict ub = check_upper_bound(datum);
    if (ub.hypothesis && !ub.conclusion_holds) {
      report("upper-bound", "all k_i = 0 when b0 - 1 = sum mu_perp", "some k_i != 0");
    }
  });
  guarded(kChiFormProperty, [&] {
    if (b.criteria.chi_form != b.criteria.beta_zero) {
      report(kChiFormProperty, "C2 iff C1",
             "C1 = " + to_text(b.criteria.beta_zero) + ", C2 = " + to_text(b.criteria.chi_form) +
                 ", chi = " + std::to_string(b.chi),
             is_xr(datum) ? "documented" : "undocumented");
    }
  });
  return out;
}

SweepResult run_sweep(const CorpusBounds& bounds, const std::vector<std::string>& properties,
                      std::size_t jobs) {
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.bounds = bounds;
  result.properties = resolve_properties(properties);

  const std::vector<EquisingularDatum> corpus = enumerate_corpus(bounds);
  result.datums_checked = corpus.size();

  std::vector<std::vector<Violation>> per_datum(corpus.size());
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 64;
  auto worker = [&] {
    while (true) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= corpus.size()) return;
      const std::size_t end = std::min(begin + kChunk, corpus.size());
      for (std::size_t i = begin; i < end; ++i) {
        per_datum[i] = check_datum(corpus[i], i, result.properties);
      }
    }
  };

  jobs = std::max<std::size_t>(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  for (auto& found : per_datum) {
    for (auto& v : found) result.violations.push_back(std::move(v));
  }
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

ojson sweep_to_json(const SweepResult& result) {
  ojson violations = ojson::array();
  for (const auto& v : result.violations) {
    ojson entry = {{"index", v.index},
                   {"datum", ojson::parse(v.datum)},
                   {"property", v.property},
                   {"expected", v.expected},
                   {"got", v.got}};
    if (!v.label.empty()) entry["label"] = v.label;
    violations.push_back(std::move(entry));
  }
  return {{"bounds",
           {{"max_branches", result.bounds.max_branches},
            {"max_multiplicity", result.bounds.max_multiplicity},
            {"max_delta", result.bounds.max_delta},
            {"max_intersection", result.bounds.max_intersection}}},
          {"properties", result.properties},
          {"datums_checked", result.datums_checked},
          {"violation_count", result.violations.size()},
          {"violations", violations},
          {"version", std::string(kVersion)}};
}

}  // namespace milnor
