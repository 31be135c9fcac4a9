#include "drmpg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "drmpg/drm.hpp"
#include "drmpg/fixtures.hpp"

namespace drmpg::harness {

using nlohmann::json;

namespace {

constexpr std::uint64_t kEvalStream = 3;
constexpr std::uint64_t kMseStream = 4;
constexpr std::uint64_t kOracleStream = 5;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vector random_theta(rng::Engine& eng, Eigen::Index d, double scale) {
  Vector theta(d);
  for (Eigen::Index i = 0; i < d; ++i) theta(i) = eng.uniform(-scale, scale);
  return theta;
}

json distortion_json(const DistortionFn& g) {
  return json{{"family", g.name()}, {"r", g.r()}};
}

DistortionFn distortion_from_json(const json& j) {
  return DistortionFn::from_name(j.at("family").get<std::string>(),
                                 j.value("r", 0.0));
}

json env_json(const EnvSpec& env) {
  json j{{"builtin", env.builtin},
         {"slip", env.lake.slip},
         {"step_reward", env.lake.step_reward},
         {"hole_reward", env.lake.hole_reward},
         {"goal_reward", env.lake.goal_reward},
         {"episode_cap", env.lake.episode_cap}};
  if (env.layout_path) j["layout_path"] = *env.layout_path;
  if (env.mdp_path) j["mdp_path"] = *env.mdp_path;
  return j;
}

void env_from_json(const json& j, EnvSpec& env) {
  env.builtin = j.value("builtin", env.builtin);
  if (j.contains("layout_path")) env.layout_path = j.at("layout_path").get<std::string>();
  if (j.contains("mdp_path")) env.mdp_path = j.at("mdp_path").get<std::string>();
  env.lake.slip = j.value("slip", env.lake.slip);
  env.lake.step_reward = j.value("step_reward", env.lake.step_reward);
  env.lake.hole_reward = j.value("hole_reward", env.lake.hole_reward);
  env.lake.goal_reward = j.value("goal_reward", env.lake.goal_reward);
  env.lake.episode_cap = j.value("episode_cap", env.lake.episode_cap);
}

TrainMode mode_from_name(const std::string& name) {
  if (name == "onpolicy") return TrainMode::OnPolicy;
  if (name == "offpolicy") return TrainMode::OffPolicy;
  if (name == "reinforce") return TrainMode::Reinforce;
  throw std::invalid_argument("unknown train mode '" + name + "'");
}

std::string mode_name(TrainMode mode) {
  switch (mode) {
    case TrainMode::OnPolicy: return "onpolicy";
    case TrainMode::OffPolicy: return "offpolicy";
    case TrainMode::Reinforce: return "reinforce";
  }
  return "?";
}

}  // namespace

EpisodicMdp build_env(const EnvSpec& env) {
  if (env.mdp_path) return parse_mdp_text(read_text(*env.mdp_path));
  if (env.builtin == "chain") return fixtures::two_state_chain();
  if (env.builtin == "frozenlake") {
    const std::string layout =
        env.layout_path ? read_text(*env.layout_path) : default_frozen_lake_layout();
    return frozen_lake(layout, env.lake);
  }
  throw std::invalid_argument("unknown builtin environment '" + env.builtin + "'");
}

// --- train -------------------------------------------------------------------

namespace {

struct EvalResult {
  double mean_return;
  double empirical_drm;
};

EvalResult evaluate_policy(const EpisodicMdp& mdp, const Vector& theta,
                           const TrainConfig& cfg, int episodes,
                           std::uint64_t which) {
  const SoftmaxPolicy policy(mdp.n_states(), mdp.n_actions(), theta);
  std::vector<double> returns(episodes);
  for (int i = 0; i < episodes; ++i) {
    returns[i] = rollout(mdp, policy, cfg.gamma,
                         rng::derive_seed(cfg.seed, kEvalStream, which, i))
                     .ret;
  }
  double mean = 0.0;
  for (double r : returns) mean += r;
  mean /= static_cast<double>(episodes);
  return {mean, drm_empirical(returns, cfg.g)};
}

void write_run_artifacts(const std::filesystem::path& dir, const EpisodicMdp& mdp,
                         const TrainRunConfig& cfg, const TrainConfig& train_cfg,
                         const TrainTrace& trace) {
  std::filesystem::create_directories(dir);

  std::ostringstream train_csv, timing_csv;
  train_csv << "iteration,mean_return,batch_drm,grad_norm\n";
  timing_csv << "iteration,wall_ms\n";
  for (const auto& rec : trace.records) {
    train_csv << rec.iteration << ',' << fmt(rec.mean_return) << ','
              << fmt(rec.batch_drm) << ',' << fmt(rec.grad_norm) << '\n';
    timing_csv << rec.iteration << ',' << fmt(rec.wall_ms) << '\n';
  }

  std::ostringstream plot_csv;
  plot_csv << "iteration,smoothed_return\n";
  const int w = std::max(1, cfg.smoothing_window);
  double window_sum = 0.0;
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    window_sum += trace.records[k].mean_return;
    if (k >= static_cast<std::size_t>(w)) window_sum -= trace.records[k - w].mean_return;
    const auto denom = static_cast<double>(std::min<std::size_t>(k + 1, w));
    plot_csv << trace.records[k].iteration << ',' << fmt(window_sum / denom) << '\n';
  }

  std::ostringstream eval_csv;
  eval_csv << "policy,episodes,mean_return,empirical_drm\n";
  const std::pair<const char*, const Vector*> evals[] = {
      {"theta_0", &trace.thetas.front()},
      {"theta_R", &trace.theta_r},
      {"theta_N", &trace.thetas.back()},
  };
  for (std::uint64_t which = 0; which < 3; ++which) {
    const auto res = evaluate_policy(mdp, *evals[which].second, train_cfg,
                                     cfg.eval_episodes, which);
    eval_csv << evals[which].first << ',' << cfg.eval_episodes << ','
             << fmt(res.mean_return) << ',' << fmt(res.empirical_drm) << '\n';
  }

  auto snapshot = [&](const char* name, const Vector& theta) {
    std::ostringstream out;
    save_policy(out, SoftmaxPolicy(mdp.n_states(), mdp.n_actions(), theta));
    write_text(dir / name, out.str());
  };

  write_text(dir / "train.csv", train_csv.str());
  write_text(dir / "timing.csv", timing_csv.str());
  write_text(dir / "plot_return.csv", plot_csv.str());
  write_text(dir / "eval.csv", eval_csv.str());
  snapshot("theta_0.txt", trace.thetas.front());
  snapshot("theta_R.txt", trace.theta_r);
  snapshot("theta_N.txt", trace.thetas.back());

  TrainRunConfig echo = cfg;
  echo.train = train_cfg;
  write_text(dir / "config.json", config_echo_json(echo));
}

}  // namespace

void run_train(const TrainRunConfig& cfg) {
  const EpisodicMdp mdp = build_env(cfg.env);
  const Eigen::Index d =
      static_cast<Eigen::Index>(mdp.n_states()) * mdp.n_actions();
  if (cfg.repetitions < 1) throw std::invalid_argument("run_train: repetitions must be >= 1");

  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (seeds.empty()) seeds.assign(1, cfg.train.seed);

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    TrainConfig train_cfg = cfg.train;
    train_cfg.seed = seeds[rep % seeds.size()];
    const Vector init = Vector::Zero(d);

    TrainTrace trace;
    switch (train_cfg.mode) {
      case TrainMode::OnPolicy:
        trace = drm_onp_lr(mdp, init, train_cfg);
        break;
      case TrainMode::OffPolicy: {
        const Vector behavior =
            cfg.behavior_theta ? *cfg.behavior_theta : Vector::Zero(d);
        train_cfg.mode = TrainMode::OffPolicy;
        trace = drm_offp_lr(mdp, init, behavior, train_cfg);
        break;
      }
      case TrainMode::Reinforce:
        trace = reinforce(mdp, init, train_cfg);
        break;
    }

    const std::filesystem::path dir =
        cfg.repetitions == 1
            ? cfg.out_dir
            : cfg.out_dir / ("rep_" + std::to_string(rep));
    write_run_artifacts(dir, mdp, cfg, train_cfg, trace);
  }
}

// --- MSE study ---------------------------------------------------------------

std::vector<MseRow> run_mse_study(const MseStudyConfig& cfg) {
  const EpisodicMdp mdp = build_env(cfg.env);
  const EpisodeAtlas atlas = EpisodeAtlas::enumerate(mdp, cfg.gamma);
  const Eigen::Index d =
      static_cast<Eigen::Index>(mdp.n_states()) * mdp.n_actions();

  rng::Engine theta_eng(rng::derive_seed(cfg.seed, kMseStream, 0));
  const SoftmaxPolicy target(mdp.n_states(), mdp.n_actions(),
                             random_theta(theta_eng, d, cfg.theta_scale));
  const SoftmaxPolicy behavior(mdp.n_states(), mdp.n_actions());  // uniform

  const Vector truth = exact_grad(atlas, target, cfg.g);
  const BoundConstants constants =
      cfg.offpolicy ? bound_constants_for(atlas, cfg.g, &target, &behavior)
                    : bound_constants_for(atlas, cfg.g);

  std::vector<MseRow> rows;
  for (int m : cfg.batch_sizes) {
    double total_sq = 0.0;
    std::vector<Episode> episodes(m);
    for (int b = 0; b < cfg.batches; ++b) {
      for (int i = 0; i < m; ++i) {
        const std::uint64_t seed =
            rng::derive_seed(cfg.seed, kMseStream + 1 + static_cast<std::uint64_t>(m),
                             b, i);
        episodes[i] = cfg.offpolicy ? rollout(mdp, behavior, target, cfg.gamma, seed)
                                    : rollout(mdp, target, cfg.gamma, seed);
      }
      const GradReport rep = cfg.offpolicy
                                 ? grad_offpolicy(episodes, cfg.g, atlas.m_r())
                                 : grad_onpolicy(episodes, cfg.g, atlas.m_r());
      total_sq += (rep.grad - truth).squaredNorm();
    }
    const double mse = total_sq / static_cast<double>(cfg.batches);
    const double bound = cfg.offpolicy ? constants.mse_bound_offpolicy(m)
                                       : constants.mse_bound_onpolicy(m);
    rows.push_back({m, mse, bound, mse / bound});
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ostringstream csv;
    csv << "m,empirical_mse,lemma_bound,ratio\n";
    for (const auto& row : rows)
      csv << row.m << ',' << fmt(row.empirical_mse) << ',' << fmt(row.lemma_bound)
          << ',' << fmt(row.ratio) << '\n';
    write_text(cfg.out_dir / "mse.csv", csv.str());
    write_text(cfg.out_dir / "config.json", config_echo_json(cfg));
  }
  return rows;
}

// --- oracle suite --------------------------------------------------------------

namespace {

std::vector<DistortionFn> default_distortions() {
  return {DistortionFn::dual_power(2.0),  DistortionFn::quadratic(1.0),
          DistortionFn::exponential(1.0), DistortionFn::square_root(1.0),
          DistortionFn::logarithmic(1.0), DistortionFn::identity()};
}

}  // namespace

bool OracleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const OracleCheck& c) { return c.pass; });
}

OracleReport run_oracle_suite(const OracleSuiteConfig& cfg) {
  const EpisodicMdp mdp = build_env(cfg.env);
  const EpisodeAtlas atlas = EpisodeAtlas::enumerate(mdp, cfg.gamma);
  const Eigen::Index d =
      static_cast<Eigen::Index>(mdp.n_states()) * mdp.n_actions();
  OracleReport report;
  auto add = [&](std::string name, bool pass, std::string detail) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  rng::Engine eng(rng::derive_seed(cfg.seed, kOracleStream, 0));

  // Atlas normalization: total probability is 1 under arbitrary policies.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const SoftmaxPolicy pol(mdp.n_states(), mdp.n_actions(), random_theta(eng, d, 2.0));
      double total = 0.0;
      for (const auto& ep : atlas.episodes()) total += atlas.policy_prob(ep, pol);
      worst = std::max(worst, std::abs(total - 1.0));
    }
    add("atlas_normalization", worst <= 1e-10, "max |sum P - 1| = " + fmt(worst));
  }

  // CDF shape: non-decreasing, 0 below the support, 1 above it.
  {
    const SoftmaxPolicy pol(mdp.n_states(), mdp.n_actions(), random_theta(eng, d, 2.0));
    const auto& brk = atlas.distinct_returns();
    bool ok = exact_cdf(atlas, pol, brk.front() - 1.0) == 0.0 &&
              std::abs(exact_cdf(atlas, pol, brk.back() + 1.0) - 1.0) <= 1e-12;
    double prev = -1.0;
    for (double x : brk) {
      const double f = exact_cdf(atlas, pol, x);
      ok = ok && f >= prev && f >= 0.0 && f <= 1.0;
      prev = f;
    }
    add("cdf_shape", ok, "monotone step CDF over " + std::to_string(brk.size()) +
                             " breakpoints");
  }

  // Monte Carlo consistency of the EDF against the exact CDF.
  {
    const SoftmaxPolicy pol(mdp.n_states(), mdp.n_actions(), random_theta(eng, d, 1.0));
    const int m = cfg.consistency_rollouts;
    std::vector<double> returns(m);
    for (int i = 0; i < m; ++i)
      returns[i] =
          rollout(mdp, pol, cfg.gamma, rng::derive_seed(cfg.seed, kOracleStream, 1, i)).ret;
    std::sort(returns.begin(), returns.end());
    double sup = 0.0;
    for (double x : atlas.distinct_returns()) {
      const double emp = edf(returns, x);
      sup = std::max(sup, std::abs(emp - exact_cdf(atlas, pol, x)));
    }
    const double limit = 3.0 / std::sqrt(static_cast<double>(m));
    add("mc_consistency", sup <= limit,
        "sup |EDF - F| = " + fmt(sup) + " (limit " + fmt(limit) + ")");
  }

  // Exact gradient vs central finite differences, all six configurations.
  {
    double worst = 0.0;
    std::string worst_at = "-";
    for (const auto& g : default_distortions()) {
      for (int trial = 0; trial < 10; ++trial) {
        const SoftmaxPolicy pol(mdp.n_states(), mdp.n_actions(),
                                random_theta(eng, d, 2.0));
        Vector exact = exact_grad(atlas, pol, g);
        if (cfg.perturb_sign) exact = -exact;  // self-test hook
        const Vector fd = finite_diff_grad(atlas, pol, g, 1e-5);
        const double rel = (fd - exact).norm() / std::max(exact.norm(), 1e-10);
        if (rel > worst) {
          worst = rel;
          worst_at = g.name();
        }
      }
    }
    add("grad_finite_diff", worst <= 1e-5,
        "max rel err = " + fmt(worst) + " (worst family: " + worst_at + ")");
  }

  // Off-policy CDF identity: E_b[1{R <= x} psi] recovers F exactly.
  const SoftmaxPolicy target(mdp.n_states(), mdp.n_actions(), random_theta(eng, d, 1.5));
  const SoftmaxPolicy behavior(mdp.n_states(), mdp.n_actions(),
                               random_theta(eng, d, 1.0));
  {
    double worst = 0.0;
    for (double x : atlas.distinct_returns()) {
      double weighted = 0.0;
      for (const auto& ep : atlas.episodes())
        if (ep.ret <= x)
          weighted += atlas.policy_prob(ep, behavior) * atlas.is_ratio(ep, target, behavior);
      worst = std::max(worst, std::abs(weighted - exact_cdf(atlas, target, x)));
    }
    add("offpolicy_cdf_identity", worst <= 1e-10, "max |E_b[1 psi] - F| = " + fmt(worst));
  }

  // Smoothness: gradient differences obey the Lipschitz constant L_rho'.
  {
    bool ok = true;
    double worst_margin = 0.0;
    for (const auto& g : default_distortions()) {
      const BoundConstants c = bound_constants_for(atlas, g);
      for (int trial = 0; trial < 100; ++trial) {
        const Vector t1 = random_theta(eng, d, 2.0);
        const Vector t2 = random_theta(eng, d, 2.0);
        const SoftmaxPolicy p1(mdp.n_states(), mdp.n_actions(), t1);
        const SoftmaxPolicy p2(mdp.n_states(), mdp.n_actions(), t2);
        const double lhs = (exact_grad(atlas, p1, g) - exact_grad(atlas, p2, g)).norm();
        const double rhs = c.l_rho_prime * (t1 - t2).norm();
        ok = ok && lhs <= rhs;
        worst_margin = std::max(worst_margin, rhs > 0.0 ? lhs / rhs : 0.0);
      }
    }
    add("smoothness_inequality", ok,
        "max ||dgrad|| / (L ||dtheta||) = " + fmt(worst_margin));
  }

  // Estimator norm ceiling: the a.s. bound 2 M_r M_g' M_e M_d (x M_s off-policy).
  {
    const DistortionFn g = DistortionFn::logarithmic(1.0);
    const BoundConstants c = bound_constants_for(atlas, g, &target, &behavior);
    const double on_limit = 2.0 * c.m_r * c.m_gprime * c.m_e * c.m_d;
    const double off_limit = on_limit * c.m_s;
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Episode> eps(16);
      for (int i = 0; i < 16; ++i)
        eps[i] = rollout(mdp, target, cfg.gamma,
                         rng::derive_seed(cfg.seed, kOracleStream, 2, trial * 16 + i));
      const double on_norm = grad_onpolicy(eps, g, atlas.m_r()).grad.norm();
      for (int i = 0; i < 16; ++i)
        eps[i] = rollout(mdp, behavior, target, cfg.gamma,
                         rng::derive_seed(cfg.seed, kOracleStream, 3, trial * 16 + i));
      const double off_norm = grad_offpolicy(eps, g, atlas.m_r()).grad.norm();
      ok = ok && on_norm <= on_limit && off_norm <= off_limit;
      worst = std::max({worst, on_norm / on_limit, off_norm / off_limit});
    }
    add("grad_report_ceiling", ok, "max ||grad|| / ceiling = " + fmt(worst));
    report.constants = c;
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    json j;
    j["seed"] = cfg.seed;
    j["gamma"] = cfg.gamma;
    j["perturb_sign"] = cfg.perturb_sign;
    j["all_pass"] = report.all_pass();
    j["bound_constants"] = {
        {"m_r", report.constants.m_r},         {"m_e", report.constants.m_e},
        {"m_d", report.constants.m_d},         {"m_h", report.constants.m_h},
        {"m_s", report.constants.m_s},         {"m_gprime", report.constants.m_gprime},
        {"m_gdprime", report.constants.m_gdprime},
        {"l_rho_prime", report.constants.l_rho_prime}};
    j["checks"] = json::array();
    for (const auto& c : report.checks)
      j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    write_text(cfg.out_dir / "report.json", j.dump(2) + "\n");
  }
  return report;
}

// --- presets and config files ---------------------------------------------------

Experiment preset(const std::string& name) {
  Experiment exp;
  if (name == "frozenlake-paper") {
    exp.kind = "train";
    exp.train.env = EnvSpec{};  // frozenlake defaults
    exp.train.train.n_iterations = 10000;
    exp.train.train.batch_size = 100;       // ceil(sqrt(N))
    exp.train.train.step_size = 0.01;       // 1 / sqrt(N)
    exp.train.train.gamma = 0.99;
    exp.train.train.g = DistortionFn::logarithmic(1.0);
    // Problem-specific tight bound: the goal reward is terminal and the only
    // positive reward, so R <= 10; the worst path (99 frozen steps into a
    // hole) stays above -19.5.
    exp.train.train.m_r = 20.0;
    exp.train.train.seed = 1;
    exp.train.train.mode = TrainMode::OnPolicy;
    exp.train.eval_episodes = 1000;
    exp.train.smoothing_window = 50;
    exp.train.out_dir = "out/frozenlake-paper";
    return exp;
  }
  if (name == "chain-mse") {
    exp.kind = "mse-study";
    exp.mse.out_dir = "out/chain-mse";
    return exp;
  }
  if (name == "oracle-default") {
    exp.kind = "oracle-suite";
    exp.oracle.out_dir = "out/oracle";
    return exp;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

Experiment parse_config_json(const std::string& text) {
  const json j = json::parse(text);
  Experiment exp = j.contains("preset") ? preset(j.at("preset").get<std::string>())
                                        : Experiment{};
  if (exp.kind.empty()) exp.kind = "train";
  exp.kind = j.value("experiment", exp.kind);

  if (j.contains("env")) {
    env_from_json(j.at("env"), exp.train.env);
    env_from_json(j.at("env"), exp.mse.env);
    env_from_json(j.at("env"), exp.oracle.env);
  }
  if (j.contains("train")) {
    const json& t = j.at("train");
    TrainConfig& c = exp.train.train;
    c.n_iterations = t.value("iterations", c.n_iterations);
    c.batch_size = t.value("batch_size", c.batch_size);
    c.step_size = t.value("step_size", c.step_size);
    c.gamma = t.value("gamma", c.gamma);
    if (t.contains("distortion")) c.g = distortion_from_json(t.at("distortion"));
    c.m_r = t.value("m_r", c.m_r);
    c.seed = t.value("seed", c.seed);
    if (t.contains("mode")) c.mode = mode_from_name(t.at("mode").get<std::string>());
    if (t.contains("behavior_theta")) {
      const auto vals = t.at("behavior_theta").get<std::vector<double>>();
      Vector b(static_cast<Eigen::Index>(vals.size()));
      for (std::size_t i = 0; i < vals.size(); ++i) b(static_cast<Eigen::Index>(i)) = vals[i];
      exp.train.behavior_theta = std::move(b);
    }
  }
  exp.train.eval_episodes = j.value("eval_episodes", exp.train.eval_episodes);
  exp.train.smoothing_window = j.value("smoothing_window", exp.train.smoothing_window);
  exp.train.repetitions = j.value("repetitions", exp.train.repetitions);
  if (j.contains("seeds"))
    exp.train.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("out")) {
    exp.train.out_dir = j.at("out").get<std::string>();
    exp.mse.out_dir = exp.train.out_dir;
    exp.oracle.out_dir = exp.train.out_dir;
  }
  if (j.contains("mse")) {
    const json& m = j.at("mse");
    exp.mse.gamma = m.value("gamma", exp.mse.gamma);
    if (m.contains("distortion")) exp.mse.g = distortion_from_json(m.at("distortion"));
    if (m.contains("batch_sizes"))
      exp.mse.batch_sizes = m.at("batch_sizes").get<std::vector<int>>();
    exp.mse.batches = m.value("batches", exp.mse.batches);
    exp.mse.offpolicy = m.value("offpolicy", exp.mse.offpolicy);
    exp.mse.theta_scale = m.value("theta_scale", exp.mse.theta_scale);
    exp.mse.seed = m.value("seed", exp.mse.seed);
  }
  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    exp.oracle.gamma = o.value("gamma", exp.oracle.gamma);
    exp.oracle.seed = o.value("seed", exp.oracle.seed);
    exp.oracle.consistency_rollouts =
        o.value("consistency_rollouts", exp.oracle.consistency_rollouts);
  }
  return exp;
}

std::string config_echo_json(const TrainRunConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["experiment"] = "train";
  j["env"] = env_json(cfg.env);
  j["train"] = {{"iterations", cfg.train.n_iterations},
                {"batch_size", cfg.train.batch_size},
                {"step_size", cfg.train.step_size},
                {"gamma", cfg.train.gamma},
                {"distortion", distortion_json(cfg.train.g)},
                {"m_r", cfg.train.m_r},
                {"seed", cfg.train.seed},
                {"mode", mode_name(cfg.train.mode)}};
  if (cfg.behavior_theta) {
    std::vector<double> b(cfg.behavior_theta->data(),
                          cfg.behavior_theta->data() + cfg.behavior_theta->size());
    j["train"]["behavior_theta"] = b;
  }
  j["eval_episodes"] = cfg.eval_episodes;
  j["smoothing_window"] = cfg.smoothing_window;
  j["repetitions"] = cfg.repetitions;
  j["seeds"] = cfg.seeds;
  j["out"] = cfg.out_dir.string();
  return j.dump(2) + "\n";
}

std::string config_echo_json(const MseStudyConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["experiment"] = "mse-study";
  j["env"] = env_json(cfg.env);
  j["mse"] = {{"gamma", cfg.gamma},
              {"distortion", distortion_json(cfg.g)},
              {"batch_sizes", cfg.batch_sizes},
              {"batches", cfg.batches},
              {"offpolicy", cfg.offpolicy},
              {"theta_scale", cfg.theta_scale},
              {"seed", cfg.seed}};
  j["out"] = cfg.out_dir.string();
  return j.dump(2) + "\n";
}

}  // namespace drmpg::harness
