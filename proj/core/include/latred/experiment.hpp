#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latred/lattice.hpp"
#include "latred/reduction.hpp"
#include "latred/solvers.hpp"

namespace latred {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "LATRED_OUT_DIR";

/// $LATRED_OUT_DIR when set and non-empty, otherwise "latred_out".
std::string default_output_dir();

enum class Pipeline { kSbp, kNpp };

std::string to_string(Pipeline pipeline);
Pipeline pipeline_from_string(const std::string& name);

struct ExperimentConfig {
  Pipeline pipeline = Pipeline::kSbp;
  InstanceProfile profile = InstanceProfile::kDiagonal;
  std::size_t n = 2;
  double eps = 1.0;
  std::optional<std::uint64_t> override_m;
  SolverSpec solver;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t max_attempts = 10;
  /// Directory for <label>.csv and <label>.json; nothing is written when empty.
  std::string out_dir;
  /// Defaults to <pipeline>_n<n>_m<m>_<solver>_seed<seed>.
  std::string label;
  /// Also write the final attempt's transcript and solver output per trial.
  bool save_transcripts = false;
};

struct ExperimentRow {
  std::size_t trial = 0;
  std::size_t attempts = 0;
  double solver_value = 0.0;
  double kappa_target = 0.0;
  double dist = 0.0;
  double bound = 0.0;
  bool verified = false;
  bool member = false;
  bool wraparound = false;
  Regime regime = Regime::kOverride;
  std::string failure;
  /// Not serialized; kept so callers can re-verify.
  std::optional<Vector> s;
  std::uint64_t instance_seed = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t m = 0;
  std::vector<ExperimentRow> rows;
  double success_rate = 0.0;
  double mean_attempts = 0.0;
  std::string csv;
  std::string json;
  std::string csv_path;
  std::string json_path;
};

/// Instance for one trial: seed = Rng(config.seed).fork("instance", trial).key(),
/// gamma = 4 m ln n (sbp) or 4 m ln m (npp).
PlantedIncGDDInstance experiment_instance(const ExperimentConfig& config, std::size_t trial);

/// Runs config.trials independent reductions. Trial t draws everything from
/// Rng(config.seed).fork("trial", t), so output is a pure function of the
/// config and reruns are byte-identical.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// RFC 4180 CSV with a fixed header.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace latred
