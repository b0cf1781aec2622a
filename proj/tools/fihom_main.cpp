// Command-line front end: homology tables, invariant reports, theorem
// checks, and the fuzzing harness over presentation files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fihom/fihom.hpp"

namespace {

using namespace fihom;
namespace fs = std::filesystem;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string input;
  int amax = 4;
  int nmax = -1;  // default: the file's truncation
  std::string backend = "gauss";
  std::string field_override;
  std::string format = "tsv";
  std::string out_dir;
};

RankPolicy make_policy(const std::string& backend_flag) {
  std::string b = backend_flag;
  if (const char* env = std::getenv("FIHOM_BACKEND")) b = env;
  RankPolicy p;
  if (b == "gauss") {
    p.backend = Backend::Gauss;
  } else if (b == "bareiss") {
    p.backend = Backend::Bareiss;
  } else if (b == "paired") {
    p.backend = Backend::Gauss;
    p.paired = true;
  } else {
    throw parse_error("unknown backend \"" + b + "\" (gauss|bareiss|paired)");
  }
  return p;
}

FieldSpec parse_field_flag(const std::string& s) {
  if (s == "Q") return FieldSpec::rationals();
  std::string t = s;
  if (t.rfind("Fp:", 0) == 0) t = t.substr(3);
  else if (t.rfind("F", 0) == 0) t = t.substr(1);
  try {
    return FieldSpec::prime(static_cast<std::uint32_t>(std::stoul(t)));
  } catch (const std::exception&) {
    throw parse_error("bad --field value \"" + s + "\" (use Q or Fp:P)");
  }
}

ModuleFile load_module(const CommonOpts& opts) {
  std::ifstream in(opts.input);
  if (!in) throw parse_error("cannot open input file " + opts.input);
  std::stringstream ss;
  ss << in.rdbuf();
  ModuleFile mf = parse_module_file(ss.str());
  if (!opts.field_override.empty())
    mf.field = parse_field_flag(opts.field_override);
  return mf;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name);
  out << content;
}

template <class Fn>
int with_field(const FieldSpec& fs, Fn&& fn) {
  if (fs.is_rational()) return fn(Rationals{});
  return fn(PrimeField{fs.p});
}

int cmd_homology(const CommonOpts& opts) {
  ModuleFile mf = load_module(opts);
  int nmax = opts.nmax >= 0 ? opts.nmax : mf.truncation;
  return with_field(mf.field, [&](auto field) {
    RankPolicy policy = make_policy(opts.backend);
    auto pm = from_presentation(mf.presentation, field, mf.truncation);
    HomologyTable t = homology_table(pm.V, opts.amax, nmax, policy);
    json twin = table_to_json(t);
    if (!opts.out_dir.empty()) {
      write_file(opts.out_dir, "table.tsv", t.to_tsv());
      write_file(opts.out_dir, "table.json", twin.dump(2) + "\n");
    }
    if (opts.format == "json") {
      std::cout << twin.dump(2) << "\n";
    } else {
      std::cout << t.to_tsv();
    }
    return kExitPass;
  });
}

int cmd_invariants(const CommonOpts& opts) {
  ModuleFile mf = load_module(opts);
  return with_field(mf.field, [&](auto field) {
    RankPolicy policy = make_policy(opts.backend);
    auto pm = from_presentation(mf.presentation, field, mf.truncation);
    InvariantReport r = invariant_report(pm, opts.amax, policy);
    json j = report_to_json(r);
    if (!opts.out_dir.empty())
      write_file(opts.out_dir, "invariants.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return kExitPass;
  });
}

int cmd_check(const CommonOpts& opts, const std::string& theorem) {
  ModuleFile mf = load_module(opts);
  return with_field(mf.field, [&](auto field) {
    RankPolicy policy = make_policy(opts.backend);
    auto pm = from_presentation(mf.presentation, field, mf.truncation);
    int nmax = opts.nmax >= 0 ? opts.nmax : std::max(0, pm.V.N - 1);
    bool any_fail = false;
    json artifacts = json::array();
    auto note = [&](const std::string& line, const json& art, bool failed) {
      std::cout << line << "\n";
      artifacts.push_back(art);
      any_fail = any_fail || failed;
    };
    bool matched = false;
    if (theorem == "cone" || theorem == "all") {
      matched = true;
      auto rep = cone_phi_check(pm.V, nmax, opts.amax, policy);
      json art{{"theorem", "cone"},
               {"verdict", rep.all_pass ? "PASS" : "FAIL"},
               {"cells", rep.cells_checked}};
      if (!rep.all_pass) art["first_failure"] = rep.first_failure();
      note(std::string(rep.all_pass ? "PASS" : "FAIL") +
               " cone: " + std::to_string(rep.cells_checked) + " cells",
           art, !rep.all_pass);
    }
    if (theorem == "les" || theorem == "all") {
      matched = true;
      auto rep = les_exactness_check(pm.V, opts.amax, nmax, policy);
      json art{{"theorem", "les"},
               {"verdict", rep.all_pass ? "PASS" : "FAIL"},
               {"nodes", rep.nodes_checked}};
      if (!rep.all_pass) art["first_failure"] = rep.first_failure();
      note(std::string(rep.all_pass ? "PASS" : "FAIL") +
               " les: " + std::to_string(rep.nodes_checked) + " nodes",
           art, !rep.all_pass);
    }
    if (theorem != "cone" && theorem != "les") {
      auto results = theorem_suite(pm, opts.amax, policy);
      bool found = theorem == "all";
      for (const auto& r : results) {
        if (theorem != "all" && r.theorem != theorem) continue;
        found = true;
        note(r.line(), check_to_json(r), r.verdict == Verdict::Fail);
      }
      if (!found) {
        std::string known = "cone, les";
        for (const auto& r : results) known += ", " + r.theorem;
        throw parse_error("unknown theorem selector \"" + theorem +
                          "\"; known: " + known);
      }
      matched = true;
    }
    (void)matched;
    if (!opts.out_dir.empty())
      write_file(opts.out_dir, "checks.json", artifacts.dump(2) + "\n");
    return any_fail ? kExitFail : kExitPass;
  });
}

int cmd_fuzz(const CommonOpts& opts, std::uint64_t seed, int count) {
  FuzzConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  cfg.a_max = opts.amax;
  if (!opts.field_override.empty())
    cfg.field = parse_field_flag(opts.field_override);
  return with_field(cfg.field, [&](auto field) {
    RankPolicy policy = make_policy(opts.backend);
    FuzzSummary sum = run_fuzz(cfg, field, policy);
    json j = sum.to_json();
    std::cout << j.dump(2) << "\n";
    if (!opts.out_dir.empty()) {
      write_file(opts.out_dir, "fuzz_summary.json", j.dump(2) + "\n");
      for (size_t i = 0; i < sum.failure_payloads.size(); ++i)
        write_file(opts.out_dir, "failure_" + std::to_string(i) + ".json",
                   sum.failure_payloads[i].dump(2) + "\n");
    }
    return sum.failures > 0 ? kExitFail : kExitPass;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fihom: exact FI-module homology workbench"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string theorem = "all";
  std::uint64_t seed = 1;
  int count = 50;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("--input", opts.input, "presentation file")->required();
    sub->add_option("--amax", opts.amax, "largest homological degree");
    sub->add_option("--nmax", opts.nmax, "largest evaluation degree");
    sub->add_option("--backend", opts.backend, "gauss|bareiss|paired");
    sub->add_option("--field", opts.field_override, "field override (Q or Fp:P)");
    sub->add_option("--format", opts.format, "tsv|json");
    sub->add_option("--out", opts.out_dir, "artifact output directory");
  };

  CLI::App* homology = app.add_subcommand("homology", "homology dimension table");
  add_common(homology, true);
  CLI::App* invariants = app.add_subcommand("invariants", "invariant report");
  add_common(invariants, true);
  CLI::App* check = app.add_subcommand("check", "verify theorems on a module");
  add_common(check, true);
  check->add_option("--theorem", theorem, "theorem id, or all, cone, les");
  CLI::App* fuzz = app.add_subcommand("fuzz", "seeded fuzzing harness");
  add_common(fuzz, false);
  fuzz->add_option("--seed", seed, "fuzz seed");
  fuzz->add_option("--count", count, "number of presentations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand("homology")) return cmd_homology(opts);
    if (app.got_subcommand("invariants")) return cmd_invariants(opts);
    if (app.got_subcommand("check")) return cmd_check(opts, theorem);
    if (app.got_subcommand("fuzz")) return cmd_fuzz(opts, seed, count);
  } catch (const window_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const oracle_mismatch_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
