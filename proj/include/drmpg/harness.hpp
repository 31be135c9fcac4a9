#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "drmpg/optimizer.hpp"
#include "drmpg/oracle.hpp"

namespace drmpg::harness {

/// Environment selector: a builtin name ("frozenlake" with default layout,
/// "chain" for the oracle fixture) or a path to a layout / MDP description.
struct EnvSpec {
  std::string builtin = "frozenlake";
  std::optional<std::string> layout_path;  // frozen lake text map
  std::optional<std::string> mdp_path;     // plain-text MDP description
  FrozenLakeConfig lake;
};

EpisodicMdp build_env(const EnvSpec& env);

struct TrainRunConfig {
  EnvSpec env;
  TrainConfig train;
  std::optional<Vector> behavior_theta;  // required for off-policy mode
  int eval_episodes = 1000;
  int smoothing_window = 50;
  int repetitions = 1;
  std::vector<std::uint64_t> seeds;  // one per repetition; defaults to {train.seed}
  std::filesystem::path out_dir;
};

/// Runs the configured optimizer and writes, per repetition:
///   train.csv   iteration,mean_return,batch_drm,grad_norm
///   timing.csv  iteration,wall_ms          (not covered by determinism)
///   eval.csv    policy,episodes,mean_return,empirical_drm  (theta_0/R/N)
///   plot_return.csv  iteration,smoothed_return
///   theta_0.txt theta_R.txt theta_N.txt    parameter snapshots
///   config.json                            full resolved config echo
/// Artifacts are buffered and written only after the run completes.
void run_train(const TrainRunConfig& cfg);

struct MseStudyConfig {
  EnvSpec env{.builtin = "chain"};
  double gamma = 0.9;
  DistortionFn g = DistortionFn::logarithmic(1.0);
  std::vector<int> batch_sizes = {32, 64, 128, 256, 512, 1024};
  int batches = 500;
  bool offpolicy = false;
  double theta_scale = 0.5;  // target theta drawn uniformly from [-scale, scale]
  std::uint64_t seed = 1;
  std::filesystem::path out_dir;
};

struct MseRow {
  int m;
  double empirical_mse;
  double lemma_bound;
  double ratio;  // empirical_mse / lemma_bound
};

/// Estimates E||grad_hat - exact_grad||^2 on an enumerable MDP for each batch
/// size in the ladder and compares against the order-1/m theoretical bound.
/// Writes mse.csv (m,empirical_mse,lemma_bound,ratio) and config.json.
std::vector<MseRow> run_mse_study(const MseStudyConfig& cfg);

struct OracleSuiteConfig {
  EnvSpec env{.builtin = "chain"};
  double gamma = 0.9;
  std::uint64_t seed = 7;
  int consistency_rollouts = 100000;
  bool perturb_sign = false;  // self-test hook: corrupts the gradient check
  std::filesystem::path out_dir;
};

struct OracleCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  BoundConstants constants{};
  bool all_pass() const;
};

/// Runs the oracle invariants (atlas normalization, CDF shape, Monte Carlo
/// consistency, gradient vs finite differences across all six distortion
/// configurations, off-policy CDF identity, smoothness inequality) and
/// writes report.json.
OracleReport run_oracle_suite(const OracleSuiteConfig& cfg);

// --- config file handling ----------------------------------------------------

struct Experiment {
  std::string kind;  // "train" | "mse-study" | "oracle-suite"
  TrainRunConfig train;
  MseStudyConfig mse;
  OracleSuiteConfig oracle;
};

/// Known presets: "frozenlake-paper" (the full-scale Frozen Lake training
/// experiment), "chain-mse", "oracle-default".
Experiment preset(const std::string& name);

/// Parses a JSON config (optionally starting from a preset named in its
/// "preset" field) into an experiment description.
Experiment parse_config_json(const std::string& text);

std::string config_echo_json(const TrainRunConfig& cfg);
std::string config_echo_json(const MseStudyConfig& cfg);

}  // namespace drmpg::harness
