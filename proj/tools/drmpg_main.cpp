#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "drmpg/harness.hpp"

namespace {

using drmpg::harness::Experiment;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool out_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--preset", opts.preset_name, "named preset (e.g. frozenlake-paper)");
  cmd->add_option("--out", opts.out_dir, "output directory")
      ->each([&](const std::string&) { opts.out_set = true; });
  cmd->add_option("--seed", opts.seed, "master seed")
      ->each([&](const std::string&) { opts.seed_set = true; });
}

Experiment resolve(const CommonOpts& opts, const std::string& fallback_preset) {
  Experiment exp;
  if (!opts.config_path.empty())
    exp = drmpg::harness::parse_config_json(slurp(opts.config_path));
  else if (!opts.preset_name.empty())
    exp = drmpg::harness::preset(opts.preset_name);
  else
    exp = drmpg::harness::preset(fallback_preset);
  if (opts.seed_set) {
    exp.train.train.seed = opts.seed;
    exp.train.seeds.clear();
    exp.mse.seed = opts.seed;
    exp.oracle.seed = opts.seed;
  }
  if (opts.out_set) {
    exp.train.out_dir = opts.out_dir;
    exp.mse.out_dir = opts.out_dir;
    exp.oracle.out_dir = opts.out_dir;
  }
  return exp;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Policy-gradient optimization of distortion risk measures"};
  app.require_subcommand(1);

  CommonOpts train_opts, mse_opts, oracle_opts;
  bool perturb_sign = false;

  CLI::App* train = app.add_subcommand("train", "run a training experiment");
  add_common(train, train_opts);

  CLI::App* mse = app.add_subcommand("mse-study", "gradient-estimator MSE scaling study");
  add_common(mse, mse_opts);

  CLI::App* oracle = app.add_subcommand("oracle-suite", "run the oracle validation suite");
  add_common(oracle, oracle_opts);
  oracle->add_flag("--perturb-sign", perturb_sign,
                   "self-test hook: corrupt the gradient check and expect failure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      Experiment exp = resolve(train_opts, "frozenlake-paper");
      drmpg::harness::run_train(exp.train);
      std::cout << "train: artifacts written to " << exp.train.out_dir.string() << "\n";
      return 0;
    }
    if (mse->parsed()) {
      Experiment exp = resolve(mse_opts, "chain-mse");
      const auto rows = drmpg::harness::run_mse_study(exp.mse);
      for (const auto& row : rows)
        std::cout << "m=" << row.m << " mse=" << row.empirical_mse
                  << " bound=" << row.lemma_bound << " ratio=" << row.ratio << "\n";
      std::cout << "mse-study: artifacts written to " << exp.mse.out_dir.string() << "\n";
      return 0;
    }
    Experiment exp = resolve(oracle_opts, "oracle-default");
    exp.oracle.perturb_sign = perturb_sign;
    const auto report = drmpg::harness::run_oracle_suite(exp.oracle);
    for (const auto& check : report.checks)
      std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << ": "
                << check.detail << "\n";
    if (!report.all_pass()) {
      std::cerr << "oracle-suite: at least one invariant failed\n";
      return 1;
    }
    std::cout << "oracle-suite: all checks passed\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
