#include "drmpg/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "drmpg/drm.hpp"

namespace drmpg {

namespace {

// Stream tags keep rollout, iterate-selection, and evaluation randomness on
// disjoint substreams of the run seed.
constexpr std::uint64_t kRolloutStream = 1;
constexpr std::uint64_t kPickStream = 2;

TrainTrace run_loop(const EpisodicMdp& mdp, const Vector& init_theta,
                    const Vector* behavior_theta, const TrainConfig& cfg) {
  cfg.validate();
  const int n_states = mdp.n_states();
  const int n_actions = mdp.n_actions();
  if (init_theta.size() != static_cast<Eigen::Index>(n_states) * n_actions)
    throw std::invalid_argument("train: init_theta dimension does not match the MDP");

  TrainTrace trace;
  trace.thetas.reserve(cfg.n_iterations + 1);
  trace.thetas.push_back(init_theta);
  trace.records.reserve(cfg.n_iterations);

  const SoftmaxPolicy behavior_policy =
      behavior_theta ? SoftmaxPolicy(n_states, n_actions, *behavior_theta)
                     : SoftmaxPolicy(n_states, n_actions);

  Vector theta = init_theta;
  std::vector<Episode> episodes(cfg.batch_size);
  std::vector<double> returns(cfg.batch_size);
  for (int k = 0; k < cfg.n_iterations; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const SoftmaxPolicy target(n_states, n_actions, theta);
    const SoftmaxPolicy& acting =
        (cfg.mode == TrainMode::OffPolicy) ? behavior_policy : target;
    for (int i = 0; i < cfg.batch_size; ++i) {
      episodes[i] = rollout(mdp, acting, target, cfg.gamma,
                            rng::derive_seed(cfg.seed, kRolloutStream, k, i));
      returns[i] = episodes[i].ret;
    }

    Vector grad;
    switch (cfg.mode) {
      case TrainMode::OnPolicy:
        grad = grad_onpolicy(episodes, cfg.g, cfg.m_r).grad;
        break;
      case TrainMode::OffPolicy:
        grad = grad_offpolicy(episodes, cfg.g, cfg.m_r).grad;
        break;
      case TrainMode::Reinforce: {
        grad = Vector::Zero(theta.size());
        for (const auto& ep : episodes) grad += ep.ret * ep.score_sum;
        grad /= static_cast<double>(cfg.batch_size);
        break;
      }
    }

    theta += cfg.step_size * grad;
    if (!theta.allFinite())
      throw std::runtime_error("train: non-finite parameters at iteration " +
                               std::to_string(k) + "; aborting");
    trace.thetas.push_back(theta);

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    double mean_ret = 0.0;
    for (double r : returns) mean_ret += r;
    mean_ret /= static_cast<double>(cfg.batch_size);
    trace.records.push_back({k, mean_ret, drm_empirical(returns, cfg.g),
                             grad.norm(), wall_ms});
  }

  rng::Engine pick(rng::derive_seed(cfg.seed, kPickStream));
  const Vector& picked = pick_random_iterate(trace, pick);
  trace.r_index = static_cast<int>(&picked - trace.thetas.data());
  trace.theta_r = picked;
  return trace;
}

}  // namespace

TrainConfig TrainConfig::with_schedule_defaults(int n_iterations) {
  TrainConfig cfg;
  cfg.n_iterations = n_iterations;
  cfg.batch_size = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_iterations))));
  cfg.step_size = 1.0 / std::sqrt(static_cast<double>(n_iterations));
  return cfg;
}

void TrainConfig::validate() const {
  if (n_iterations < 1) throw std::invalid_argument("TrainConfig: N must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: m must be >= 1");
  if (!(step_size >= 0.0)) throw std::invalid_argument("TrainConfig: alpha must be >= 0");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("TrainConfig: gamma must lie in (0,1)");
  if (!(m_r > 0.0)) throw std::invalid_argument("TrainConfig: M_r must be positive");
}

const Vector& pick_random_iterate(const TrainTrace& trace, rng::Engine& eng) {
  if (trace.thetas.size() < 2)
    throw std::invalid_argument("pick_random_iterate: trace has no iterates");
  const auto n = trace.thetas.size() - 1;
  return trace.thetas[1 + eng.below(n)];
}

TrainTrace drm_onp_lr(const EpisodicMdp& mdp, const Vector& init_theta,
                      const TrainConfig& cfg) {
  if (cfg.mode != TrainMode::OnPolicy)
    throw std::invalid_argument("drm_onp_lr: cfg.mode must be OnPolicy");
  return run_loop(mdp, init_theta, nullptr, cfg);
}

TrainTrace drm_offp_lr(const EpisodicMdp& mdp, const Vector& init_theta,
                       const Vector& behavior_theta, const TrainConfig& cfg) {
  if (cfg.mode != TrainMode::OffPolicy)
    throw std::invalid_argument("drm_offp_lr: cfg.mode must be OffPolicy");
  return run_loop(mdp, init_theta, &behavior_theta, cfg);
}

TrainTrace reinforce(const EpisodicMdp& mdp, const Vector& init_theta,
                     const TrainConfig& cfg) {
  if (cfg.mode != TrainMode::Reinforce)
    throw std::invalid_argument("reinforce: cfg.mode must be Reinforce");
  return run_loop(mdp, init_theta, nullptr, cfg);
}

}  // namespace drmpg
