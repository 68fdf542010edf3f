// latred: command line front end.
//
//   latred gen        --n 2 --profile diagonal --seed 7 --out inst.json
//   latred reduce     --pipeline sbp --instance inst.json --override-m 16
//   latred solve      --input transcript.json --solver karmarkar_karp
//   latred verify     --transcript t.json --solution x.json
//   latred stats      --suite all
//   latred experiment --pipeline npp --n 2 --override-m 12 --trials 50
//
// Exit status is 0 iff every check the verb performs passes, 1 if a check
// fails and 2 on usage or input errors.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "latred/experiment.hpp"
#include "latred/lemma_checks.hpp"
#include "latred/npp_reduction.hpp"
#include "latred/sbp_reduction.hpp"
#include "latred/serialization.hpp"
#include "latred/solvers.hpp"

namespace {

using namespace latred;
using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CommonOptions {
  std::string pipeline = "sbp";
  std::size_t n = 2;
  double eps = 1.0;
  std::uint64_t override_m = 0;  // 0 = use the formula
  std::string solver = "brute_sbp";
  std::string alphabet = "pm_one";
  std::uint64_t budget = 4096;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t max_attempts = 10;
  std::string out;
  std::string profile = "diagonal";
};

std::optional<std::uint64_t> override_of(const CommonOptions& o) {
  return o.override_m == 0 ? std::nullopt : std::optional<std::uint64_t>(o.override_m);
}

SolverSpec solver_spec(const CommonOptions& o) {
  SolverSpec spec;
  spec.kind = solver_kind_from_string(o.solver);
  spec.alphabet = Alphabet::parse(o.alphabet);
  spec.budget = o.budget;
  return spec;
}

// "-" writes to stdout; an empty path falls back to <default dir>/<name>.
void emit(const std::string& out, const std::string& fallback_name, const std::string& text) {
  if (out == "-") {
    std::cout << text;
    return;
  }
  const std::string path =
      out.empty() ? (std::filesystem::path(default_output_dir()) / fallback_name).string() : out;
  write_text_file(path, text);
  std::cerr << "wrote " << path << "\n";
}

void add_option_set(CLI::App* app, CommonOptions& o, bool with_trials) {
  app->add_option("--pipeline", o.pipeline, "sbp or npp")->check(CLI::IsMember({"sbp", "npp"}));
  app->add_option("--n", o.n, "lattice dimension")->check(CLI::PositiveNumber);
  app->add_option("--eps", o.eps, "eps of the kappa profile")->check(CLI::PositiveNumber);
  app->add_option("--override-m", o.override_m, "use this m instead of the formula");
  app->add_option("--solver", o.solver,
                  "brute_sbp, brute_npp, karmarkar_karp, random_search, always_fail");
  app->add_option("--alphabet", o.alphabet, "pm_one, ternary or bounded:<B>");
  app->add_option("--budget", o.budget, "random_search draws")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "root seed");
  app->add_option("--max-attempts", o.max_attempts, "reduction attempts")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "output path (directory for experiment); - for stdout");
  app->add_option("--profile", o.profile, "diagonal, qary or rotated")
      ->check(CLI::IsMember({"diagonal", "qary", "rotated"}));
  if (with_trials) app->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
}

// Default solver for the chosen pipeline when --solver was not given.
void fix_default_solver(CLI::App* app, CommonOptions& o) {
  if (app->count("--solver") == 0 && o.pipeline == "npp") o.solver = "brute_npp";
}

PlantedIncGDDInstance load_or_generate(const std::string& path, const CommonOptions& o) {
  if (!path.empty()) return instance_from_json(read_text_file(path));
  ExperimentConfig cfg;
  cfg.pipeline = pipeline_from_string(o.pipeline);
  cfg.profile = instance_profile_from_string(o.profile);
  cfg.n = o.n;
  cfg.eps = o.eps;
  cfg.override_m = override_of(o);
  cfg.seed = o.seed;
  return experiment_instance(cfg, 0);
}

int cmd_gen(const CommonOptions& o, double gamma) {
  PlantedIncGDDInstance inst = [&] {
    if (gamma > 0.0) {
      return generate_planted_instance(o.n, instance_profile_from_string(o.profile), gamma, o.seed);
    }
    return load_or_generate("", o);
  }();
  emit(o.out, "instance.json", instance_to_json(inst));
  return 0;
}

int cmd_reduce(const CommonOptions& o, const std::string& instance_path, const std::string& transcript_out) {
  const PlantedIncGDDInstance inst = load_or_generate(instance_path, o);
  const auto solver = make_solver(solver_spec(o));
  Rng rng = Rng(o.seed).fork("trial", 0);
  ReductionResult result;
  std::string transcript;
  if (o.pipeline == "sbp") {
    const SbpParams params = derive_sbp_params(inst, o.eps, override_of(o));
    result = run_sbp_reduction(inst, params, *solver, o.max_attempts, rng);
    if (!transcript_out.empty()) {
      const Rng arng = rng.fork("attempt", result.attempts - 1);
      Rng build = arng;
      transcript = transcript_to_json(
          build_sbp_instance(inst, params, build, guess_embedding(solver->alphabet(), params.m, arng)).second);
    }
  } else {
    const NppParams params = derive_npp_params(inst, o.eps, override_of(o));
    result = run_npp_reduction(inst, params, *solver, o.max_attempts, rng);
    if (!transcript_out.empty()) {
      Rng build = rng.fork("attempt", result.attempts - 1);
      transcript = transcript_to_json(build_npp_instance(inst, params, build).second);
    }
  }
  if (!transcript_out.empty()) write_text_file(transcript_out, transcript);
  emit(o.out, "reduce.json", reduction_result_to_json(result));
  return result.verified ? 0 : kExitFail;
}

// Accepts a transcript, {"A": [[...]]} or {"a": [...]}, optionally with
// "kappa_target".
int cmd_solve(const CommonOptions& o, const std::string& input) {
  const json j = json::parse(read_text_file(input));
  Matrix a;
  std::optional<double> kappa;
  auto from_rows = [](const json& rows) {
    Matrix m(rows.size(), rows.at(0).size());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = rows.at(i).at(c).get<double>();
    return m;
  };
  if (j.contains("pipeline")) {
    if (j.at("pipeline") == "sbp") {
      a = from_rows(j.at("A"));
    } else {
      const auto v = j.at("a").get<std::vector<double>>();
      a = Matrix(1, v.size());
      a.data() = v;
    }
    kappa = j.at("params").at("kappa_target").get<double>();
  } else if (j.contains("A")) {
    a = from_rows(j.at("A"));
  } else {
    const auto v = j.at("a").get<std::vector<double>>();
    a = Matrix(1, v.size());
    a.data() = v;
  }
  if (j.contains("kappa_target")) kappa = j.at("kappa_target").get<double>();
  const auto solver = make_solver(solver_spec(o));
  Rng rng = Rng(o.seed).fork("solver");
  const SolverOutput out = solver->solve(a, kappa.value_or(0.0), rng);
  emit(o.out, "solution.json", solver_output_to_json(out));
  if (!kappa) return 0;
  return discrepancy(a, out.x) <= *kappa ? 0 : kExitFail;
}

int cmd_verify(const CommonOptions& o, const std::string& transcript_path, const std::string& solution_path) {
  const std::string text = read_text_file(transcript_path);
  const SolverOutput sol = solver_output_from_json(read_text_file(solution_path));
  json report;
  bool ok = false;
  if (transcript_pipeline(text) == "sbp") {
    const SbpTranscript tr = sbp_transcript_from_json(text);
    const SbpExtraction ext = extract_short_vector(tr, sol.x);
    const IncGDDVerdict v = verify_incgdd_solution(tr.inst, ext.s);
    report = {{"pipeline", "sbp"},
              {"s", ext.s},
              {"achieved", ext.achieved},
              {"kappa_target", tr.params.kappa_target},
              {"kappa_ok", ext.achieved <= tr.params.kappa_target},
              {"e_prime_inf", ext.e_prime_inf},
              {"error_budget_ok", ext.error_budget_ok},
              {"integrality_residual", ext.integrality_residual},
              {"guess_matched", ext.guess_matched},
              {"member", v.member},
              {"dist", v.dist},
              {"bound", v.bound},
              {"valid", v.valid},
              {"regime", to_string(tr.params.regime)}};
    ok = v.valid;
  } else {
    const NppTranscript tr = npp_transcript_from_json(text);
    const NppExtraction ext = extract_short_vector_npp(tr, sol.x);
    const IncGDDVerdict v = verify_incgdd_solution(tr.inst, ext.s);
    report = {{"pipeline", "npp"},
              {"s", ext.s},
              {"achieved", ext.achieved},
              {"kappa_target", tr.params.kappa_target},
              {"kappa_ok", ext.achieved <= tr.params.kappa_target},
              {"e_double_prime", ext.e_double_prime},
              {"grid_residue", to_string(ext.grid_residue)},
              {"snap", to_string(ext.snap)},
              {"phi_inverse_l1", ext.phi_inverse_l1},
              {"wraparound", ext.wraparound},
              {"slack_budget_ok", ext.slack_budget_ok},
              {"member", v.member},
              {"dist", v.dist},
              {"bound", v.bound},
              {"valid", v.valid},
              {"regime", to_string(tr.params.regime)}};
    ok = v.valid;
  }
  emit(o.out, "verify.json", report.dump(2) + "\n");
  return ok ? 0 : kExitFail;
}

int cmd_stats(const CommonOptions& o, const std::string& suite) {
  const auto reports = run_stats_suite(suite, o.seed);
  bool ok = true;
  for (const auto& r : reports) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.test << " n=" << r.n << " m=" << r.m
              << " statistic=" << r.statistic << " threshold=" << r.threshold << "\n";
    ok = ok && r.pass;
  }
  emit(o.out, "stats_" + suite + ".json", stat_reports_to_json(reports));
  return ok ? 0 : kExitFail;
}

int cmd_experiment(const CommonOptions& o, double min_success, bool save_transcripts) {
  ExperimentConfig cfg;
  cfg.pipeline = pipeline_from_string(o.pipeline);
  cfg.profile = instance_profile_from_string(o.profile);
  cfg.n = o.n;
  cfg.eps = o.eps;
  cfg.override_m = override_of(o);
  cfg.solver = solver_spec(o);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.max_attempts = o.max_attempts;
  cfg.out_dir = o.out.empty() ? default_output_dir() : o.out;
  cfg.save_transcripts = save_transcripts;
  const ExperimentReport report = run_experiment(cfg);
  std::cout << "success_rate=" << report.success_rate << " mean_attempts=" << report.mean_attempts
            << "\ncsv=" << report.csv_path << "\njson=" << report.json_path << "\n";
  return report.success_rate >= min_success ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case to average-case lattice reductions: perceptron and number partitioning"};
  app.require_subcommand(1);

  CommonOptions o;
  double gamma = 0.0;
  std::string instance_path;
  std::string transcript_out;
  std::string input_path;
  std::string transcript_path;
  std::string solution_path;
  std::string suite = "all";
  double min_success = 0.0;
  bool save_transcripts = false;

  CLI::App* gen = app.add_subcommand("gen", "generate a planted instance");
  add_option_set(gen, o, false);
  gen->add_option("--gamma", gamma, "approximation factor (default: derived from --pipeline and m)");

  CLI::App* reduce = app.add_subcommand("reduce", "run a reduction end to end");
  add_option_set(reduce, o, false);
  reduce->add_option("--instance", instance_path, "instance JSON (default: generate from --n/--seed)");
  reduce->add_option("--transcript-out", transcript_out, "write the final attempt's transcript here");

  CLI::App* solve = app.add_subcommand("solve", "run a solver on an instance file");
  add_option_set(solve, o, false);
  solve->add_option("--input", input_path, "transcript or {\"A\"}/{\"a\"} JSON")->required();

  CLI::App* verify = app.add_subcommand("verify", "recheck a transcript and a solution");
  add_option_set(verify, o, false);
  verify->add_option("--transcript", transcript_path)->required();
  verify->add_option("--solution", solution_path)->required();

  CLI::App* stats = app.add_subcommand("stats", "run lemma check suites");
  add_option_set(stats, o, false);
  std::string suites = "all";
  for (const auto& s : stats_suite_names()) suites += ", " + s;
  stats->add_option("--suite", suite, suites);

  CLI::App* experiment = app.add_subcommand("experiment", "batch of seeded trials to CSV and JSON");
  add_option_set(experiment, o, true);
  experiment->add_option("--min-success-rate", min_success, "exit 1 below this success rate")
      ->check(CLI::Range(0.0, 1.0));
  experiment->add_flag("--save-transcripts", save_transcripts, "write per-trial transcript and solution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*gen) return cmd_gen(o, gamma);
    if (*reduce) {
      fix_default_solver(reduce, o);
      return cmd_reduce(o, instance_path, transcript_out);
    }
    if (*solve) return cmd_solve(o, input_path);
    if (*verify) return cmd_verify(o, transcript_path, solution_path);
    if (*stats) return cmd_stats(o, suite);
    if (*experiment) {
      fix_default_solver(experiment, o);
      return cmd_experiment(o, min_success, save_transcripts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
