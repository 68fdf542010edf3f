#include "latred/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "latred/npp_reduction.hpp"
#include "latred/sbp_reduction.hpp"
#include "latred/serialization.hpp"

namespace latred {

std::string default_output_dir() {
  const char* env = std::getenv(kOutDirEnv);
  if (env != nullptr && *env != '\0') return env;
  return "latred_out";
}

std::string to_string(Pipeline pipeline) { return pipeline == Pipeline::kSbp ? "sbp" : "npp"; }

Pipeline pipeline_from_string(const std::string& name) {
  if (name == "sbp") return Pipeline::kSbp;
  if (name == "npp") return Pipeline::kNpp;
  throw std::invalid_argument("unknown pipeline: " + name + " (expected sbp or npp)");
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::uint64_t resolve_m(const ExperimentConfig& config) {
  if (config.override_m) return *config.override_m;
  const auto m = config.pipeline == Pipeline::kSbp ? sbp_formula_m(config.n, config.eps)
                                                   : npp_formula_m(config.n, config.eps);
  if (!m || *m > kDefaultMBudget) {
    throw std::invalid_argument("formula m for n = " + std::to_string(config.n) +
                                " is beyond the desk-scale budget; pass --override-m");
  }
  return *m;
}

void validate(const ExperimentConfig& config) {
  if (config.trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (config.max_attempts == 0) throw std::invalid_argument("max_attempts must be >= 1");
  if (config.n == 0) throw std::invalid_argument("n must be >= 1");
  if (config.pipeline == Pipeline::kSbp && config.n < 2) {
    throw std::invalid_argument("the sbp pipeline needs n >= 2");
  }
  if (config.pipeline == Pipeline::kNpp && config.solver.alphabet.kind() != Alphabet::Kind::kPmOne) {
    throw std::invalid_argument("the npp pipeline supports the pm_one alphabet only");
  }
}

}  // namespace

PlantedIncGDDInstance experiment_instance(const ExperimentConfig& config, std::size_t trial) {
  const std::uint64_t m = resolve_m(config);
  const double gamma = config.pipeline == Pipeline::kSbp ? sbp_gamma(config.n, m) : npp_gamma(m);
  const std::uint64_t seed = Rng(config.seed).fork("instance", trial).key();
  return generate_planted_instance(config.n, config.profile, std::max(gamma, 1.0), seed);
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "trial,attempts,solver_value,kappa_target,dist,bound,verified,member,wraparound,regime,failure\r\n";
  for (const auto& r : rows) {
    out << r.trial << ',' << r.attempts << ',' << format_double(r.solver_value) << ','
        << format_double(r.kappa_target) << ',' << format_double(r.dist) << ',' << format_double(r.bound)
        << ',' << (r.verified ? 1 : 0) << ',' << (r.member ? 1 : 0) << ',' << (r.wraparound ? 1 : 0) << ','
        << to_string(r.regime) << ',' << csv_field(r.failure) << "\r\n";
  }
  return out.str();
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  ExperimentReport report;
  report.config = config;
  report.m = resolve_m(config);
  if (report.config.label.empty()) {
    report.config.label = to_string(config.pipeline) + "_n" + std::to_string(config.n) + "_m" +
                          std::to_string(report.m) + "_" + to_string(config.solver.kind) + "_seed" +
                          std::to_string(config.seed);
  }
  const std::string& label = report.config.label;
  const auto solver = make_solver(config.solver);
  const Rng root(config.seed);

  std::size_t successes = 0;
  std::size_t total_attempts = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const PlantedIncGDDInstance inst = experiment_instance(config, t);
    Rng trial_rng = root.fork("trial", t);
    ReductionResult result;
    Regime regime;
    std::string transcript;
    if (config.pipeline == Pipeline::kSbp) {
      const SbpParams params = derive_sbp_params(inst, config.eps, config.override_m);
      regime = params.regime;
      result = run_sbp_reduction(inst, params, *solver, config.max_attempts, trial_rng);
      if (config.save_transcripts) {
        const Rng arng = trial_rng.fork("attempt", result.attempts - 1);
        Rng build_rng = arng;
        const auto emb = guess_embedding(solver->alphabet(), params.m, arng);
        transcript = transcript_to_json(build_sbp_instance(inst, params, build_rng, emb).second);
      }
    } else {
      const NppParams params = derive_npp_params(inst, config.eps, config.override_m);
      regime = params.regime;
      result = run_npp_reduction(inst, params, *solver, config.max_attempts, trial_rng);
      if (config.save_transcripts) {
        Rng build_rng = trial_rng.fork("attempt", result.attempts - 1);
        transcript = transcript_to_json(build_npp_instance(inst, params, build_rng).second);
      }
    }
    ExperimentRow row;
    row.trial = t;
    row.attempts = result.attempts;
    row.verified = result.verified;
    row.regime = regime;
    row.s = result.s;
    row.instance_seed = inst.seed;
    if (!result.log.empty()) {
      const AttemptRecord& last = result.log.back();
      row.solver_value = last.solver_value;
      row.kappa_target = last.kappa_target;
      row.dist = last.dist;
      row.bound = last.bound;
      row.member = last.member;
      row.wraparound = last.wraparound;
      row.failure = last.failure;
    }
    successes += row.verified ? 1 : 0;
    total_attempts += row.attempts;
    report.rows.push_back(std::move(row));

    if (config.save_transcripts && !config.out_dir.empty()) {
      // Re-run the solver on the stored instance so the solution file pairs
      // with the transcript.
      const std::filesystem::path dir = std::filesystem::path(config.out_dir) / (label + "_transcripts");
      const std::string stem = (dir / ("trial" + std::to_string(t))).string();
      write_text_file(stem + "_transcript.json", transcript);
      Rng srng = trial_rng.fork("attempt", result.attempts - 1).fork("solver");
      Matrix a;
      if (config.pipeline == Pipeline::kSbp) {
        a = sbp_transcript_from_json(transcript).a;
      } else {
        const auto tr = npp_transcript_from_json(transcript);
        a = Matrix(1, tr.a.size());
        a.data() = tr.a;
      }
      write_text_file(stem + "_solution.json", solver_output_to_json(solver->solve(a, 0.0, srng)));
    }
  }
  report.success_rate = static_cast<double>(successes) / static_cast<double>(config.trials);
  report.mean_attempts = static_cast<double>(total_attempts) / static_cast<double>(config.trials);
  report.csv = experiment_csv(report.rows);

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"trial", r.trial},
                    {"attempts", r.attempts},
                    {"solver_value", r.solver_value},
                    {"kappa_target", r.kappa_target},
                    {"dist", r.dist},
                    {"bound", r.bound},
                    {"verified", r.verified},
                    {"member", r.member},
                    {"wraparound_flag", r.wraparound},
                    {"regime", to_string(r.regime)},
                    {"failure", r.failure}});
  }
  nlohmann::ordered_json j = {
      {"config",
       {{"pipeline", to_string(config.pipeline)},
        {"profile", to_string(config.profile)},
        {"n", config.n},
        {"eps", config.eps},
        {"override_m", config.override_m ? nlohmann::ordered_json(*config.override_m) : nlohmann::ordered_json(nullptr)},
        {"m", report.m},
        {"solver", to_string(config.solver.kind)},
        {"alphabet", config.solver.alphabet.name()},
        {"budget", config.solver.budget},
        {"trials", config.trials},
        {"seed", config.seed},
        {"max_attempts", config.max_attempts}}},
      {"summary",
       {{"trials", config.trials},
        {"successes", successes},
        {"success_rate", report.success_rate},
        {"mean_attempts", report.mean_attempts}}},
      {"rows", rows}};
  report.json = j.dump(2) + "\n";

  if (!config.out_dir.empty()) {
    const std::filesystem::path dir(config.out_dir);
    report.csv_path = (dir / (label + ".csv")).string();
    report.json_path = (dir / (label + ".json")).string();
    write_text_file(report.csv_path, report.csv);
    write_text_file(report.json_path, report.json);
  }
  return report;
}

}  // namespace latred
