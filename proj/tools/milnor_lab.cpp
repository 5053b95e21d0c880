// milnor_lab command-line front end.
//
// Exit codes: 0 success, 1 input error, 2 property violation, 3 internal
// inconsistency.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "milnor_lab/datum.hpp"
#include "milnor_lab/errors.hpp"
#include "milnor_lab/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;
constexpr int kExitInconsistent = 3;

struct FamilyArgs {
  std::string family;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::string base;
  std::int64_t exponent = 1;
  std::vector<std::string> qh;
};

std::string read_source(const std::string& source) {
  if (source == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return source;
  std::ifstream in(source);
  if (!in) throw milnor::InputError("cannot read curve-spec \"" + source + "\"");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

milnor::QuasiHomBranchSpec parse_qh(const std::string& text) {
  milnor::QuasiHomBranchSpec spec;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> spec.a >> c1 >> spec.b >> c2 >> spec.multiplicity) || c1 != ',' || c2 != ',' ||
      !(in >> std::ws).eof()) {
    throw milnor::InputError("--qh expects a,b,multiplicity (got \"" + text + "\")");
  }
  return spec;
}

milnor::EquisingularDatum family_datum(const FamilyArgs& args) {
  if (args.family == "monomial") return milnor::from_monomial(args.p, args.q);
  if (args.family == "power") {
    if (args.base.empty()) throw milnor::InputError("--family power requires --base");
    return milnor::from_power(milnor::parse_datum(read_source(args.base)), args.exponent);
  }
  if (args.family == "quasihomogeneous") {
    std::vector<milnor::QuasiHomBranchSpec> specs;
    for (const auto& text : args.qh) specs.push_back(parse_qh(text));
    return milnor::from_quasihomogeneous(specs);
  }
  throw milnor::InputError("unknown family \"" + args.family + "\"");
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw milnor::InputError("cannot write \"" + out_path + "\"");
  out << text;
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("MILNOR_LAB_JOBS")) {
    try {
      const long value = std::stol(env);
      if (value >= 1) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
    throw milnor::InputError("MILNOR_LAB_JOBS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void add_bounds(CLI::App* cmd, milnor::CorpusBounds& bounds) {
  cmd->add_option("--max-branches", bounds.max_branches, "Maximum number of branches")->required();
  cmd->add_option("--max-mult", bounds.max_multiplicity, "Maximum multiplicity")->required();
  cmd->add_option("--max-delta", bounds.max_delta, "Maximum delta invariant")->required();
  cmd->add_option("--max-int", bounds.max_intersection, "Maximum intersection multiplicity")
      ->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor fibre topology of non-reduced plane curve singularities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(milnor::kVersion));

  std::string spec;
  std::string out_path;
  bool dump_snf = false;
  bool jsonl = false;
  FamilyArgs family;
  auto* analyze = app.add_subcommand("analyze", "Analyze one curve-spec");
  analyze->add_option("spec", spec, "Curve-spec file, '-' for stdin, or inline JSON");
  analyze->add_option("--family", family.family, "monomial | power | quasihomogeneous");
  analyze->add_option("--p", family.p, "Monomial exponent p");
  analyze->add_option("--q", family.q, "Monomial exponent q");
  analyze->add_option("--base", family.base, "Base curve-spec for --family power");
  analyze->add_option("--exponent", family.exponent, "Exponent for --family power");
  analyze->add_option("--qh", family.qh, "Quasi-homogeneous branch a,b,multiplicity (repeatable)");
  analyze->add_option("--out", out_path, "Write the report to FILE");
  analyze->add_flag("--dump-snf", dump_snf, "Include Smith normal form diagonals");
  analyze->add_flag("--jsonl", jsonl, "Input holds one curve-spec per line; one report per line");

  milnor::CorpusBounds bounds;
  std::vector<std::string> properties;
  std::size_t jobs = 0;
  auto* verify = app.add_subcommand("verify", "Check properties over an exhaustive corpus");
  add_bounds(verify, bounds);
  verify->add_option("--properties", properties, "Comma-separated property names")->delimiter(',');
  verify->add_option("--jobs", jobs, "Worker threads (default $MILNOR_LAB_JOBS)");

  milnor::CorpusBounds enum_bounds;
  auto* enumerate = app.add_subcommand("enumerate", "Print the corpus, one curve-spec per line");
  add_bounds(enumerate, enum_bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) {
      milnor::AnalyzeOptions options{dump_snf};
      if (!family.family.empty()) {
        if (!spec.empty()) throw milnor::InputError("give either SPEC or --family, not both");
        write_output(milnor::analyze(family_datum(family), options).dump(2) + "\n", out_path);
      } else if (spec.empty()) {
        throw milnor::InputError("analyze needs SPEC or --family");
      } else if (jsonl) {
        std::istringstream lines(read_source(spec));
        std::string line;
        std::string text;
        std::size_t number = 0;
        while (std::getline(lines, line)) {
          ++number;
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          try {
            text += milnor::analyze(milnor::parse_datum(line), options).dump() + "\n";
          } catch (const milnor::InputError& e) {
            throw milnor::InputError("line " + std::to_string(number) + ": " + e.what());
          }
        }
        write_output(text, out_path);
      } else {
        const auto datum = milnor::parse_datum(read_source(spec));
        write_output(milnor::analyze(datum, options).dump(2) + "\n", out_path);
      }
      return kExitOk;
    }

    if (*verify) {
      if (jobs == 0) jobs = default_jobs();
      milnor::validate_bounds(bounds);
      const auto result = milnor::run_sweep(bounds, properties, jobs);
      std::cout << milnor::sweep_to_json(result).dump(2) << "\n";
      std::cerr << "checked " << result.datums_checked << " datums, "
                << result.violations.size() << " violations in " << result.elapsed.count()
                << " s\n";
      return result.violations.empty() ? kExitOk : kExitViolation;
    }

    if (*enumerate) {
      for (const auto& datum : milnor::enumerate_corpus(enum_bounds)) {
        std::cout << milnor::serialize_datum(datum) << "\n";
      }
      return kExitOk;
    }
  } catch (const milnor::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const milnor::InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  }
  return kExitInput;
}
