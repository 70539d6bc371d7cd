// Command-line front end: generate, solve, classify and iterate on MDPs.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "avgmdp/chain.hpp"
#include "avgmdp/exact_solver.hpp"
#include "avgmdp/harness/certificates.hpp"
#include "avgmdp/harness/experiment.hpp"
#include "avgmdp/harness/mdp_io.hpp"
#include "avgmdp/harness/specs.hpp"
#include "avgmdp/harness/trace_io.hpp"

namespace {

using namespace avgmdp;
using namespace avgmdp::harness;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvalidMdp = 3;
constexpr int kExitNoCandidate = 4;

/// Thrown for problems with the MDP itself, mapped to exit code 3.
class MdpProblem : public Error {
 public:
  using Error::Error;
};

struct SourceFlags {
  std::string mdp;
  std::string family;
  std::string random;
  std::size_t n = 0;
  std::size_t actions = 2;
  std::uint64_t seed = 0;
  std::string v0 = "zero";

  void attach(CLI::App* cmd) {
    cmd->add_option("--mdp", mdp, "MDP JSON file");
    cmd->add_option("--family", family, "lower-bound family: unichain|multichain");
    cmd->add_option("--random", random, "random_general|random_unichain|random_weakly_comm");
    cmd->add_option("--n,--states", n, "number of states for --family/--random");
    cmd->add_option("--actions", actions, "number of actions for --random");
    cmd->add_option("--seed", seed, "seed for --random");
    cmd->add_option("--v0", v0, "zero|const:<c>|file:<path>|random:<seed>");
  }

  /// Builds the problem; the family shift uses the resolved v0.
  std::pair<Problem, ValueVector> build() const {
    const int sources = !mdp.empty() + !family.empty() + !random.empty();
    if (sources != 1) throw ConfigError("give exactly one of --mdp, --family, --random");
    const V0Spec spec = parse_v0(v0);
    if (!mdp.empty()) {
      std::optional<Problem> p;
      try {
        p.emplace(file_problem(mdp));
      } catch (const FormatError& e) {
        throw MdpProblem(e.what());
      } catch (const InvalidMdp& e) {
        throw MdpProblem(e.what());
      }
      ValueVector start = resolve_v0(spec, p->mdp.n_states());
      return {std::move(*p), std::move(start)};
    }
    if (n == 0) throw ConfigError("--n must be positive");
    if (!family.empty()) {
      LowerBoundFamily fam;
      if (family == "unichain")
        fam = LowerBoundFamily::Unichain;
      else if (family == "multichain")
        fam = LowerBoundFamily::Multichain;
      else
        throw ConfigError("unknown family '" + family + "'");
      ValueVector start = resolve_v0(spec, n);
      try {
        return {family_problem(fam, n, start), start};
      } catch (const BadSize& e) {
        throw ConfigError(e.what());
      }
    }
    const auto kind = parse_random_kind(random);
    if (!kind) throw ConfigError("unknown random kind '" + random + "'");
    Problem p = random_problem(*kind, n, actions, seed);
    ValueVector start = resolve_v0(spec, n);
    return {std::move(p), std::move(start)};
  }
};

json to_json(const ValueVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

json optional_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return finite_or_string(*v);
}

std::string classification_or_unknown(const Mdp& m) {
  try {
    return std::string(to_string(classify(m)));
  } catch (const TooManyPolicies&) {
    return "unknown";
  }
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

json truth_json(const Problem& p, const GroundTruth& t) {
  json j;
  j["gain"] = to_json(t.solution.gain);
  j["bias"] = to_json(t.solution.bias);
  j["policy"] = t.solution.attaining_policy.actions();
  j["classification"] = classification_or_unknown(p.mdp);
  j["eps"] = finite_or_string(t.inputs.eps);
  j["dist0"] = t.inputs.dist0;
  j["K_rx"] = t.k_rx;
  j["K_anc"] = t.k_anc;
  return j;
}

struct RunFlags {
  SourceFlags source;
  std::string algo = "vi";
  std::string lambda;
  std::string f;
  std::size_t iters = 100;
  std::size_t stride = 1;
  std::string out;
  std::string dump_iterates;
  double tol = kVerifyTolerance;
  bool quiet = false;
};

int cmd_run(const RunFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  const Algorithm algo = parse_algorithm_or_throw(flags.algo);
  std::string lambda_spec = flags.lambda;
  if (lambda_spec.empty())
    lambda_spec = algo == Algorithm::VI                                  ? "zero"
                  : (algo == Algorithm::RxVI || algo == Algorithm::RxRVI) ? "const:0.5"
                                                                          : "anchor";
  const Schedule schedule = parse_schedule(lambda_spec);
  if (algo == Algorithm::VI && schedule.kind() != Schedule::Kind::Zero)
    throw ConfigError("vi takes no --lambda other than zero");
  std::optional<NormalizationFn> f;
  if (is_relative(algo))
    f = parse_normalization(flags.f.empty() ? "h:0" : flags.f);
  else if (!flags.f.empty())
    throw ConfigError("--f applies only to rx-rvi and anc-rvi");

  auto [problem, v0] = flags.source.build();
  if (f) {
    try {
      f->check(problem.mdp.n_states());
    } catch (const DimensionMismatch& e) {
      throw ConfigError(e.what());
    }
  }

  std::optional<GroundTruth> truth;
  try {
    const SolutionPair solution =
        problem.known_solution ? *problem.known_solution : solve_modified_bellman(problem.mdp, flags.tol);
    truth = ground_truth(problem, solution, v0);
  } catch (const TooManyPolicies& e) {
    if (!flags.quiet) std::cerr << "warning: " << e.what() << "; metrics needing g* are left empty\n";
  }

  const Experiment e =
      run_experiment(problem, truth, algo, schedule, f, v0, flags.iters, flags.dump_iterates.empty() ? flags.stride : 1);
  emit(flags.out, trace_csv(e));
  if (!flags.dump_iterates.empty()) write_file(flags.dump_iterates, iterates_csv(e.trace));

  const TraceRow& last = e.trace.rows.back();
  json summary;
  summary["mdp"] = problem.label;
  summary["algorithm"] = std::string(to_string(algo));
  summary["schedule"] = schedule.describe();
  summary["normalization"] = f ? json(f->describe()) : json(nullptr);
  summary["iters"] = flags.iters;
  summary["classification"] = classification_or_unknown(problem.mdp);
  if (truth) {
    summary["eps"] = finite_or_string(truth->inputs.eps);
    summary["K_rx"] = truth->k_rx;
    summary["K_anc"] = truth->k_anc;
    summary["dist0"] = truth->inputs.dist0;
    summary["gain"] = to_json(truth->solution.gain);
  }
  summary["final"] = {{"k", last.k},
                      {"bellman_sup_err", optional_json(last.bellman_sup_err)},
                      {"bellman_span", last.residual_span},
                      {"normalized_err", optional_json(last.normalized_err)},
                      {"policy_err", optional_json(last.policy_err)},
                      {"f_value", optional_json(last.f_value)},
                      {"drift", optional_json(last.drift)}};
  summary["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const std::string text = summary.dump(2) + "\n";
  if (!flags.out.empty())
    std::cout << text;
  else if (!flags.quiet)
    std::cerr << text;
  return kExitOk;
}

struct VerifyFlags {
  std::string cert = "all";
  std::string random;
  std::string family;
  std::optional<std::size_t> count, states, actions, iters;
  std::string lambda;
  std::string f;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::string out;
};

int cmd_verify(const VerifyFlags& flags) {
  VerifyOptions o;
  o.cert = flags.cert;
  if (!flags.random.empty()) {
    o.random = parse_random_kind(flags.random);
    if (!o.random) throw ConfigError("unknown random kind '" + flags.random + "'");
  }
  if (!flags.family.empty()) {
    if (flags.family != "unichain" && flags.family != "multichain")
      throw ConfigError("unknown family '" + flags.family + "'");
    o.family = flags.family;
  }
  o.count = flags.count;
  o.states = flags.states;
  o.actions = flags.actions;
  o.iters = flags.iters;
  if (!flags.lambda.empty()) o.schedule = parse_schedule(flags.lambda);
  if (!flags.f.empty()) o.normalization = parse_normalization(flags.f);
  o.seed = flags.seed;
  o.tol = flags.tol;
  const auto certs = run_certificates(o);
  emit(flags.out, certificates_json(certs));
  for (const auto& c : certs) {
    if (c.pass()) continue;
    std::cerr << "violated: " << c.name << ": " << c.inequality;
    if (!c.violations.empty()) {
      const auto& v = c.violations.front();
      std::cerr << " (first at " << v.instance << ", k=" << v.k << ": " << v.lhs << " > " << v.rhs << ")";
    }
    std::cerr << "\n";
  }
  for (const auto& c : certs)
    if (!c.pass()) return kExitFail;
  return kExitOk;
}

struct GenFlags {
  SourceFlags source;
  std::string out;
};

int cmd_gen(const GenFlags& flags) {
  if (!flags.source.mdp.empty()) throw ConfigError("gen takes --random or --family, not --mdp");
  if (!flags.source.random.empty() && flags.source.actions == 0)
    throw ConfigError("--actions must be positive");
  auto [problem, v0] = flags.source.build();
  emit(flags.out, mdp_to_json(problem.mdp));
  return kExitOk;
}

int cmd_solve(const SourceFlags& source, double tol) {
  auto [problem, v0] = source.build();
  const SolutionPair solution =
      problem.known_solution ? *problem.known_solution : solve_modified_bellman(problem.mdp, tol);
  std::cout << truth_json(problem, ground_truth(problem, solution, v0)).dump(2) << "\n";
  return kExitOk;
}

int cmd_classify(const SourceFlags& source) {
  auto [problem, v0] = source.build();
  json j;
  j["mdp"] = problem.label;
  j["n_states"] = problem.mdp.n_states();
  j["n_actions"] = problem.mdp.n_actions();
  j["classification"] = std::string(to_string(classify(problem.mdp)));
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct LowerBoundFlags {
  SourceFlags source;
  std::optional<std::size_t> iters;
  std::string out;
};

int cmd_lower_bound(LowerBoundFlags flags) {
  if (flags.source.family.empty()) throw ConfigError("lower-bound needs --family");
  if (!flags.source.mdp.empty() || !flags.source.random.empty())
    throw ConfigError("lower-bound takes only --family");
  auto [problem, v0] = flags.source.build();
  const std::size_t n = problem.mdp.n_states();
  const std::size_t iters = flags.iters.value_or(n - 2);
  const GroundTruth truth = ground_truth(problem, *problem.known_solution, v0);

  json report;
  report["mdp"] = problem.label;
  report["dist0"] = truth.inputs.dist0;
  report["runs"] = json::array();
  bool holds = true;
  for (auto [algo, sched] : {std::pair{Algorithm::VI, Schedule::zero()},
                             std::pair{Algorithm::RxVI, Schedule::constant(0.5)},
                             std::pair{Algorithm::AncVI, Schedule::anchor()}}) {
    const Experiment e = run_experiment(problem, truth, algo, sched, std::nullopt, v0, iters);
    if (!flags.out.empty()) write_file(flags.out + "_" + std::string(to_string(algo)) + ".csv", trace_csv(e));
    json rows = json::array();
    for (std::size_t i = 0; i < e.trace.rows.size(); ++i) {
      const TraceRow& r = e.trace.rows[i];
      if (e.lower[i] && *r.bellman_sup_err < *e.lower[i] - 1e-12) holds = false;
      rows.push_back({{"k", r.k},
                      {"bellman_sup_err", optional_json(r.bellman_sup_err)},
                      {"normalized_err", optional_json(r.normalized_err)},
                      {"lower_bound", optional_json(e.lower[i])},
                      {"upper_bound", optional_json(e.upper[i])}});
    }
    report["runs"].push_back({{"algorithm", std::string(to_string(algo))},
                              {"schedule", sched.describe()},
                              {"rows", rows}});
  }
  report["lower_bound_holds"] = holds;
  std::cout << report.dump(2) << "\n";
  return holds ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average-reward MDP solvers, bounds and lower-bound instances"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "iterate one algorithm and write a CSV trace");
  run.source.attach(run_cmd);
  run_cmd->add_option("--algo", run.algo, "vi|rx-vi|anc-vi|rx-rvi|anc-rvi");
  run_cmd->add_option("--lambda", run.lambda, "const:<x>|anchor|zero|file:<path>");
  run_cmd->add_option("--f", run.f, "h:<i>|th:<i>|max|min|mid (relative schemes)");
  run_cmd->add_option("--iters", run.iters, "number of iterations");
  run_cmd->add_option("--stride", run.stride, "keep iterates every stride rows");
  run_cmd->add_option("--out", run.out, "CSV path (stdout when omitted)");
  run_cmd->add_option("--dump-iterates", run.dump_iterates, "also write every iterate to this CSV");
  run_cmd->add_option("--tol", run.tol, "verification tolerance of the exact solver");
  run_cmd->add_flag("--quiet", run.quiet, "no diagnostics on stderr");

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "check bound certificates");
  verify_cmd->add_option("--cert", verify.cert,
                         "vi-normalized|policy-error|rx-vi|anc-vi|rx-rvi|anc-rvi|unichain-lower|multichain-lower|km-diagonal|span-relation|all");
  verify_cmd->add_option("--random", verify.random, "instance kind override");
  verify_cmd->add_option("--family", verify.family, "run on a lower-bound family");
  verify_cmd->add_option("--count", verify.count, "number of instances");
  verify_cmd->add_option("--states,--n", verify.states, "states per instance or family size");
  verify_cmd->add_option("--actions", verify.actions, "actions per instance");
  verify_cmd->add_option("--iters", verify.iters, "iterations (k_max for km-diagonal)");
  verify_cmd->add_option("--lambda", verify.lambda, "schedule override");
  verify_cmd->add_option("--f", verify.f, "normalization for rx-rvi/anc-rvi");
  verify_cmd->add_option("--seed", verify.seed, "first instance seed");
  verify_cmd->add_option("--tol", verify.tol, "slack allowed on each inequality");
  verify_cmd->add_option("--out", verify.out, "JSON path (stdout when omitted)");

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a random or family MDP as JSON");
  gen.source.attach(gen_cmd);
  gen_cmd->add_option("--kind", gen.source.random, "alias of --random");
  gen_cmd->add_option("--out", gen.out, "JSON path (stdout when omitted)");

  SourceFlags solve;
  double solve_tol = kVerifyTolerance;
  auto* solve_cmd = app.add_subcommand("solve", "print g*, h*, pi*, classification, eps and K");
  solve.attach(solve_cmd);
  solve_cmd->add_option("--tol", solve_tol, "verification tolerance");

  SourceFlags classify_flags;
  auto* classify_cmd = app.add_subcommand("classify", "print the MDP class");
  classify_flags.attach(classify_cmd);

  LowerBoundFlags lower;
  auto* lower_cmd = app.add_subcommand("lower-bound", "run VI, Rx-VI and Anc-VI on a family instance");
  lower.source.attach(lower_cmd);
  lower_cmd->add_option("--iters", lower.iters, "iterations (default n - 2)");
  lower_cmd->add_option("--out", lower.out, "prefix for per-algorithm CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(verify);
    if (*gen_cmd) return cmd_gen(gen);
    if (*solve_cmd) return cmd_solve(solve, solve_tol);
    if (*classify_cmd) return cmd_classify(classify_flags);
    if (*lower_cmd) return cmd_lower_bound(lower);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MdpProblem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidMdp;
  } catch (const InvalidMdp& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidMdp;
  } catch (const NoVerifiedCandidate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoCandidate;
  } catch (const BadSize& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
