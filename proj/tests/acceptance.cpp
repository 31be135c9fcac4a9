// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// nonzero exit if anything fails. Tolerances are pinned in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "drmpg/estimators.hpp"
#include "drmpg/fixtures.hpp"
#include "drmpg/harness.hpp"
#include "drmpg/optimizer.hpp"
#include "drmpg/oracle.hpp"

using namespace drmpg;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string label;
  double time_limit_s;
  std::function<bool(std::string&)> run;
};

std::vector<DistortionFn> six_configs() {
  return {DistortionFn::dual_power(2.0),  DistortionFn::quadratic(1.0),
          DistortionFn::exponential(1.0), DistortionFn::square_root(1.0),
          DistortionFn::logarithmic(1.0), DistortionFn::identity()};
}

Vector random_theta(rng::Engine& eng, int d, double scale) {
  Vector theta(d);
  for (int i = 0; i < d; ++i) theta(i) = eng.uniform(-scale, scale);
  return theta;
}

std::vector<Episode> chain_batch(const EpisodicMdp& mdp, int m, std::uint64_t seed,
                                 double theta_scale) {
  rng::Engine eng(seed);
  const SoftmaxPolicy pol(3, 2, random_theta(eng, 6, theta_scale));
  std::vector<Episode> eps(m);
  for (int i = 0; i < m; ++i)
    eps[i] = rollout(mdp, pol, fixtures::kChainGamma, rng::derive_seed(seed, 1, i));
  return eps;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

char detail_buf[256];

std::string fmtd(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  std::snprintf(detail_buf, sizeof detail_buf, fmt, a, b, c);
  return detail_buf;
}

// 1. exact_grad vs central finite differences, 6 configurations x 10 thetas.
bool criterion_oracle_gradient(std::string& detail) {
  const auto atlas = EpisodeAtlas::enumerate(fixtures::two_state_chain(),
                                             fixtures::kChainGamma);
  rng::Engine eng(101);
  double worst = 0.0;
  for (const auto& g : six_configs()) {
    for (int trial = 0; trial < 10; ++trial) {
      const SoftmaxPolicy pol(3, 2, random_theta(eng, 6, 2.0));
      const Vector exact = exact_grad(atlas, pol, g);
      const Vector fd = finite_diff_grad(atlas, pol, g, 1e-5);
      worst = std::max(worst, (fd - exact).norm() / std::max(exact.norm(), 1e-10));
    }
  }
  detail = fmtd("max rel err %.3g (limit 1e-5)", worst);
  return worst <= 1e-5;
}

// 2. grad_onpolicy with identity distortion telescopes to (1/m) sum (R-M_r) dl.
bool criterion_estimator_identity(std::string& detail) {
  const auto mdp = fixtures::two_state_chain();
  const double m_r = tight_return_bound(mdp, fixtures::kChainGamma);
  double worst = 0.0;
  for (std::uint64_t b = 0; b < 100; ++b) {
    rng::Engine eng(2000 + b);
    const int m = 1 + static_cast<int>(eng.below(64));
    const auto eps = chain_batch(mdp, m, 3000 + b, 2.0);
    Vector expected = Vector::Zero(6);
    for (const auto& ep : eps) expected += (ep.ret - m_r) * ep.score_sum;
    expected /= static_cast<double>(m);
    const Vector got = grad_onpolicy(eps, DistortionFn::identity(), m_r).grad;
    worst = std::max(worst,
                     (got - expected).norm() / std::max(1.0, expected.norm()));
  }
  detail = fmtd("max rel err %.3g (limit 1e-10)", worst);
  return worst <= 1e-10;
}

// 3. grad_offpolicy reduces to grad_onpolicy when behavior == target.
bool criterion_on_off_reduction(std::string& detail) {
  const auto mdp = fixtures::two_state_chain();
  const double m_r = tight_return_bound(mdp, fixtures::kChainGamma);
  const auto g = DistortionFn::logarithmic(1.0);
  double worst = 0.0;
  for (std::uint64_t b = 0; b < 100; ++b) {
    rng::Engine eng(4000 + b);
    const int m = 1 + static_cast<int>(eng.below(64));
    const auto eps = chain_batch(mdp, m, 5000 + b, 1.5);
    const Vector on = grad_onpolicy(eps, g, m_r).grad;
    const Vector off = grad_offpolicy(eps, g, m_r).grad;
    worst = std::max(worst, (on - off).norm() / std::max(1.0, on.norm()));
  }
  detail = fmtd("max rel err %.3g (limit 1e-12)", worst);
  return worst <= 1e-12;
}

// 4. MSE is O(1/m) and below the theoretical bound, on- and off-policy.
bool criterion_mse_scaling(std::string& detail) {
  bool ok = true;
  double worst_ratio_dev = 0.0, worst_bound_frac = 0.0;
  for (bool offpolicy : {false, true}) {
    harness::MseStudyConfig cfg;
    cfg.g = DistortionFn::logarithmic(1.0);
    cfg.gamma = fixtures::kChainGamma;
    cfg.batch_sizes = {32, 128, 512};
    cfg.batches = 500;
    cfg.offpolicy = offpolicy;
    cfg.seed = 606;
    const auto rows = harness::run_mse_study(cfg);
    for (int i = 0; i < 2; ++i) {  // m=32 vs 128, m=128 vs 512
      const double ratio = rows[i].empirical_mse / rows[i + 1].empirical_mse;
      ok = ok && ratio >= 2.5 && ratio <= 6.0;
      worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 4.0));
    }
    for (const auto& row : rows) {
      ok = ok && row.empirical_mse <= row.lemma_bound;
      worst_bound_frac = std::max(worst_bound_frac, row.ratio);
    }
  }
  detail = fmtd("max |ratio-4| %.2f (window [2.5,6]); max mse/bound %.3g",
                worst_ratio_dev, worst_bound_frac);
  return ok;
}

// 5. EDF of 1e5 rollouts within the 3/sqrt(m) band of the exact CDF, 20 seeds.
bool criterion_cdf_consistency(std::string& detail) {
  const auto atlas = EpisodeAtlas::enumerate(fixtures::two_state_chain(),
                                             fixtures::kChainGamma);
  const int m = 100000;
  const double limit = 3.0 / std::sqrt(static_cast<double>(m));
  int passes = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    rng::Engine theta_eng(700 + seed);
    const SoftmaxPolicy pol(3, 2, random_theta(theta_eng, 6, 1.0));
    std::vector<double> returns(m);
    for (int i = 0; i < m; ++i)
      returns[i] = rollout(atlas.mdp(), pol, fixtures::kChainGamma,
                           rng::derive_seed(800 + seed, 0, i))
                       .ret;
    std::sort(returns.begin(), returns.end());
    double sup = 0.0;
    for (double x : atlas.distinct_returns())
      sup = std::max(sup, std::abs(edf(returns, x) - exact_cdf(atlas, pol, x)));
    if (sup <= limit) ++passes;
    worst = std::max(worst, sup);
  }
  detail = fmtd("19/20 required, got %.0f/20; worst sup %.3g (band %.3g)",
                static_cast<double>(passes), worst, limit);
  return passes >= 19;
}

// 6. E_b[1{R<=x} psi] equals the exact CDF at every breakpoint.
bool criterion_offpolicy_cdf_identity(std::string& detail) {
  const auto atlas = EpisodeAtlas::enumerate(fixtures::two_state_chain(),
                                             fixtures::kChainGamma);
  rng::Engine eng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const SoftmaxPolicy target(3, 2, random_theta(eng, 6, 1.5));
    const SoftmaxPolicy behavior(3, 2, random_theta(eng, 6, 1.0));
    for (double x : atlas.distinct_returns()) {
      double weighted = 0.0;
      for (const auto& ep : atlas.episodes())
        if (ep.ret <= x)
          weighted +=
              atlas.policy_prob(ep, behavior) * atlas.is_ratio(ep, target, behavior);
      worst = std::max(worst, std::abs(weighted - exact_cdf(atlas, target, x)));
    }
  }
  detail = fmtd("max abs err %.3g (limit 1e-10)", worst);
  return worst <= 1e-10;
}

// 7. Lipschitz inequality for the exact gradient on 100 random parameter pairs.
bool criterion_smoothness(std::string& detail) {
  const auto atlas = EpisodeAtlas::enumerate(fixtures::two_state_chain(),
                                             fixtures::kChainGamma);
  rng::Engine eng(1111);
  bool ok = true;
  double worst = 0.0;
  for (const auto& g : six_configs()) {
    const auto c = bound_constants_for(atlas, g);
    for (int pair = 0; pair < 100; ++pair) {
      const Vector t1 = random_theta(eng, 6, 2.0);
      const Vector t2 = random_theta(eng, 6, 2.0);
      const double lhs = (exact_grad(atlas, SoftmaxPolicy(3, 2, t1), g) -
                          exact_grad(atlas, SoftmaxPolicy(3, 2, t2), g))
                             .norm();
      const double rhs = c.l_rho_prime * (t1 - t2).norm();
      ok = ok && lhs <= rhs;
      if (rhs > 0) worst = std::max(worst, lhs / rhs);
    }
  }
  detail = fmtd("max lhs/rhs %.3g (must stay <= 1)", worst);
  return ok;
}

// 8. Frozen Lake training trend at reduced paper scale, 5 fixed seeds.
bool criterion_training_trend(std::string& detail) {
  harness::Experiment exp = harness::preset("frozenlake-paper");
  TrainConfig cfg = exp.train.train;
  cfg.n_iterations = 2000;
  cfg.batch_size = 45;
  cfg.step_size = 1.0 / std::sqrt(2000.0);

  const EpisodicMdp mdp = harness::build_env(exp.train.env);
  const Eigen::Index d = static_cast<Eigen::Index>(mdp.n_states()) * mdp.n_actions();
  int improve_wins = 0, drm_wins = 0;
  double min_improve = 1e9;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    const auto trace = drm_onp_lr(mdp, Vector::Zero(d), cfg);
    auto eval_mean = [&](const Vector& theta, std::uint64_t tag) {
      const SoftmaxPolicy pol(mdp.n_states(), mdp.n_actions(), theta);
      double mean = 0.0;
      for (int i = 0; i < 1000; ++i)
        mean += rollout(mdp, pol, cfg.gamma, rng::derive_seed(seed, 99, tag, i)).ret;
      return mean / 1000.0;
    };
    const double improve =
        eval_mean(trace.theta_final(), 2) - eval_mean(trace.thetas.front(), 0);
    min_improve = std::min(min_improve, improve);
    if (improve >= 5.0) ++improve_wins;

    const int quarter = cfg.n_iterations / 4;
    double q1 = 0.0, q4 = 0.0;
    for (int k = 0; k < quarter; ++k) q1 += trace.records[k].batch_drm;
    for (int k = cfg.n_iterations - quarter; k < cfg.n_iterations; ++k)
      q4 += trace.records[k].batch_drm;
    if (q4 > q1) ++drm_wins;
  }
  detail = fmtd("improvement >= 5 on %.0f/5 (min %+.1f); DRM Q4>Q1 on %.0f/5",
                static_cast<double>(improve_wins), min_improve,
                static_cast<double>(drm_wins));
  return improve_wins >= 4 && drm_wins >= 4;
}

// 9. Byte-identical train.csv across two runs of the same config + seed.
bool criterion_determinism(std::string& detail) {
  const fs::path base = fs::temp_directory_path() / "drmpg_acceptance_det";
  fs::remove_all(base);
  harness::Experiment exp = harness::preset("frozenlake-paper");
  exp.train.train.n_iterations = 200;
  exp.train.train.batch_size = 15;
  exp.train.train.seed = 17;
  exp.train.eval_episodes = 200;
  exp.train.out_dir = base / "run_a";
  harness::run_train(exp.train);
  exp.train.out_dir = base / "run_b";
  harness::run_train(exp.train);
  const bool same_train = slurp(base / "run_a" / "train.csv") ==
                          slurp(base / "run_b" / "train.csv");
  const bool same_eval =
      slurp(base / "run_a" / "eval.csv") == slurp(base / "run_b" / "eval.csv");
  fs::remove_all(base);
  detail = std::string("train.csv ") + (same_train ? "identical" : "DIFFERS") +
           ", eval.csv " + (same_eval ? "identical" : "DIFFERS");
  return same_train && same_eval;
}

// 10. Squared exact-gradient norm decays from the first to the last quarter.
bool criterion_convergence_direction(std::string& detail) {
  const auto mdp = fixtures::two_state_chain();
  const auto atlas = EpisodeAtlas::enumerate(mdp, fixtures::kChainGamma);
  const auto g = DistortionFn::logarithmic(1.0);
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrainConfig cfg;
    cfg.n_iterations = 400;
    cfg.batch_size = 20;
    cfg.step_size = 1.0 / std::sqrt(400.0);
    cfg.gamma = fixtures::kChainGamma;
    cfg.g = g;
    cfg.m_r = atlas.m_r();
    cfg.seed = seed;
    const auto trace = drm_onp_lr(mdp, Vector::Zero(6), cfg);
    auto window_mean = [&](int lo, int hi) {
      double acc = 0.0;
      for (int k = lo; k < hi; ++k)
        acc += exact_grad(atlas, SoftmaxPolicy(3, 2, trace.thetas[k]), g).squaredNorm();
      return acc / static_cast<double>(hi - lo);
    };
    if (window_mean(300, 400) < window_mean(0, 100)) ++wins;
  }
  detail = fmtd("decay on %.0f/5 seeds (need >= 4)", static_cast<double>(wins));
  return wins >= 4;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "oracle gradient matches finite differences", 10.0, criterion_oracle_gradient},
      {2, "identity-distortion estimator telescopes to baselined LR", 5.0,
       criterion_estimator_identity},
      {3, "off-policy estimator reduces to on-policy at psi == 1", 5.0,
       criterion_on_off_reduction},
      {4, "estimator MSE scales as 1/m and respects the bounds", 180.0,
       criterion_mse_scaling},
      {5, "EDF consistency against the exact CDF", 60.0, criterion_cdf_consistency},
      {6, "off-policy CDF identity", 5.0, criterion_offpolicy_cdf_identity},
      {7, "gradient smoothness inequality", 30.0, criterion_smoothness},
      {8, "Frozen Lake training trend", 900.0, criterion_training_trend},
      {9, "byte-identical reruns", 120.0, criterion_determinism},
      {10, "squared gradient norm decays over training", 300.0,
       criterion_convergence_direction},
  };

  int failures = 0;
  for (auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
      pass = false;
      detail += fmtd(" [exceeded %.0fs budget]", c.time_limit_s);
    }
    if (!pass) ++failures;
    std::printf("[%2d] %s  %-55s %s  (%.1f s)\n", c.id, pass ? "PASS" : "FAIL",
                c.label.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("ACCEPTANCE: %d/10 criteria passed\n",
              static_cast<int>(criteria.size()) - failures);
  return failures == 0 ? 0 : 1;
}
