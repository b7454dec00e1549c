// conekit: generate objects, run cone/state oracles, run the verification
// battery.
//
// Exit codes: 0 success / In, 1 Out (or a failing suite), 2 bad arguments,
// 3 Unknown.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "conekit/cones.hpp"
#include "conekit/json_io.hpp"
#include "conekit/random.hpp"
#include "conekit/states.hpp"
#include "conekit/verify.hpp"

namespace {

using namespace conekit;

constexpr int kExitIn = 0;
constexpr int kExitOut = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(const Verdict& v) {
  switch (v.state) {
    case VerdictState::In: return kExitIn;
    case VerdictState::Out: return kExitOut;
    case VerdictState::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << j.dump(2) << "\n";
}

json stamp(json j, std::uint64_t seed) {
  j["seed"] = seed;
  j["version"] = CONEKIT_VERSION;
  return j;
}

struct GenArgs {
  std::string kind;
  int n = 2;
  double p = 0.0;
  std::string out;
};

struct CheckArgs {
  std::string path;
  std::string cone;
  bool ppt = false;
  bool separable = false;
  bool block_positive = false;
  int restarts = 0;
};

struct VerifyArgs {
  std::vector<std::string> suites;
  bool all = false;
  std::vector<int> dims = {2};
  int trials = 50;
  bool serial = false;
  std::string out;
};

struct ReportArgs {
  std::string path;
  std::string theorem = "T10";
  std::string cone = "cp";
  int samples = 64;
};

int cmd_gen(const GenArgs& a, std::uint64_t seed) {
  RandomObject obj = gen_random(parse_kind(a.kind), a.n, seed, a.p);
  // Self-check on the generated value before writing it out.
  json j = object_to_json(obj);
  (void)object_from_json(j);
  emit(j, a.out);
  return kExitIn;
}

int cmd_check(const CheckArgs& a, const OracleConfig& cfg,
              std::uint64_t seed) {
  const int selected = int(!a.cone.empty()) + int(a.ppt) + int(a.separable) +
                       int(a.block_positive);
  if (selected != 1)
    throw UsageError(
        "check: give exactly one of --cone, --ppt, --separable, "
        "--block-positive");
  RandomObject obj = object_from_json(load_json(a.path));

  if (!a.cone.empty()) {
    const auto* phi = std::get_if<QuantumMap>(&obj);
    if (!phi) throw UsageError("check --cone expects a QuantumMap file");
    Verdict v = membership(*phi, parse_cone(a.cone), cfg, seed);
    emit(stamp(verdict_to_json(v), seed), "");
    return exit_code(v);
  }
  if (a.block_positive) {
    const Matrix& x = std::holds_alternative<QuantumMap>(obj)
                          ? std::get<QuantumMap>(obj).choi()
                          : std::get<StateFunctional>(obj).density();
    Verdict v = in_cone_C(x, cfg, seed);
    emit(stamp(verdict_to_json(v), seed), "");
    return exit_code(v);
  }
  const auto* rho = std::get_if<StateFunctional>(&obj);
  if (!rho) throw UsageError("check --ppt/--separable expects a state file");
  if (a.ppt) {
    Verdict v = is_ppt_state(*rho, cfg.tol);
    emit(stamp(verdict_to_json(v), seed), "");
    return exit_code(v);
  }
  SeparabilityResult r = is_separable(*rho, cfg, seed);
  json j = verdict_to_json(r.verdict);
  if (r.decomposition) j["decomposition"] = decomposition_to_json(*r.decomposition);
  emit(stamp(std::move(j), seed), "");
  return exit_code(r.verdict);
}

int cmd_verify(const VerifyArgs& a, const OracleConfig& cfg,
               std::uint64_t seed) {
  std::vector<std::string> suites = a.all ? suite_ids() : a.suites;
  if (suites.empty()) throw UsageError("verify: name suites or pass --all");
  for (const auto& s : suites) {
    const auto& ids = suite_ids();
    if (std::find(ids.begin(), ids.end(), s) == ids.end())
      throw UsageError("verify: unknown suite '" + s + "'");
  }
  json reports = json::array();
  bool pass = true;
  for (int n : a.dims)
    for (const auto& s : suites) {
      SuiteReport r = run_suite(s, n, a.trials, seed,
                                a.serial ? Execution::Serial
                                         : Execution::Parallel,
                                cfg);
      pass = pass && r.pass;
      std::cerr << (r.pass ? "PASS " : "FAIL ") << s << " n=" << n
                << " trials=" << a.trials << " (" << r.elapsed_seconds
                << " s)\n";
      reports.push_back(suite_report_to_json(r));
    }
  json j = {{"version", CONEKIT_VERSION},
            {"seed", seed},
            {"pass", pass},
            {"reports", std::move(reports)}};
  emit(j, a.out);
  return pass ? kExitIn : kExitOut;
}

int cmd_report(const ReportArgs& a, const OracleConfig& cfg,
               std::uint64_t seed) {
  RandomObject obj = object_from_json(load_json(a.path));
  const auto* rho = std::get_if<StateFunctional>(&obj);
  if (!rho) throw UsageError("report expects a StateFunctional file");
  ConditionBudget budget{a.samples};
  json j;
  bool consistent = true;
  if (a.theorem == "T10") {
    Theorem10Report r = theorem10_check(*rho, parse_cone(a.cone), cfg, seed, budget);
    consistent = r.consistent;
    j = report_to_json(r);
  } else if (a.theorem == "T11") {
    Theorem11Report r = theorem11_check(*rho, cfg, seed, budget);
    consistent = r.consistent;
    j = report_to_json(r);
  } else {
    throw UsageError("report: --theorem must be T10 or T11");
  }
  emit(stamp(std::move(j), seed), "");
  return consistent ? kExitIn : kExitOut;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conekit: Choi-matrix calculus and mapping-cone oracles"};
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  double tol_override = -1.0;
  app.add_option("--seed", seed, "RNG seed (default 20091209)");
  app.add_option("--tol", tol_override,
                 "absolute tolerance (overrides CONEKIT_TOL)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a random object as JSON");
  g->add_option("kind", gen.kind,
                "state | ppt-state | cp-map | pos-map | sp-map | werner")
      ->required();
  g->add_option("--n", gen.n, "dimension of H");
  g->add_option("--p", gen.p, "Werner parameter");
  g->add_option("-o,--out", gen.out, "output path (default stdout)");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "run an oracle on a JSON object");
  c->add_option("object", check.path, "QuantumMap or StateFunctional JSON")
      ->required();
  c->add_option("--cone", check.cone, "cp | cocp | ppt-cone | pos | sp | dec");
  c->add_flag("--ppt", check.ppt, "PPT test for a state");
  c->add_flag("--separable", check.separable, "separability test for a state");
  c->add_flag("--block-positive", check.block_positive,
              "membership in the block-positive cone C");
  c->add_option("--restarts", check.restarts,
                "block-positivity restarts (default 50 n^2)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run verification suites");
  v->add_option("suites", verify.suites, "suite ids");
  v->add_flag("--all", verify.all, "run every suite");
  v->add_option("--n", verify.dims, "dimension(s) of H")->expected(1, 3);
  v->add_option("--trials", verify.trials, "trials per suite");
  v->add_flag("--serial", verify.serial, "disable trial-level parallelism");
  v->add_option("-o,--out", verify.out, "output path (default stdout)");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "theorem condition report for a state");
  r->add_option("object", report.path, "StateFunctional JSON")->required();
  r->add_option("--theorem", report.theorem, "T10 | T11");
  r->add_option("--cone", report.cone, "cone K for T10");
  r->add_option("--samples", report.samples, "sampled test maps per condition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  OracleConfig cfg;
  cfg.tol = Tolerance::from_env();
  if (tol_override >= 0.0) cfg.tol.abs_eps = tol_override;
  cfg.restarts = check.restarts;

  try {
    if (*g) return cmd_gen(gen, seed);
    if (*c) return cmd_check(check, cfg, seed);
    if (*v) return cmd_verify(verify, cfg, seed);
    if (*r) return cmd_report(report, cfg, seed);
  } catch (const UsageError& e) {
    std::cerr << "conekit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "conekit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "conekit: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
