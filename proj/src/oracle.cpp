#include "drmpg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drmpg {

EpisodeAtlas::EpisodeAtlas(EpisodicMdp mdp, double gamma)
    : mdp_(std::move(mdp)), gamma_(gamma), m_r_(tight_return_bound(mdp_, gamma)) {}

EpisodeAtlas EpisodeAtlas::enumerate(const EpisodicMdp& mdp, double gamma,
                                     std::size_t max_episodes) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("EpisodeAtlas: gamma must lie in (0,1)");
  EpisodeAtlas atlas(mdp, gamma);

  struct Frame {
    int state;
    double kernel_prob;
    double ret;
    double disc;
  };
  std::vector<int> states, actions;

  // Depth-first over all positive-probability (a, s') branches. A path that
  // hits the cap while not absorbed means the return distribution is not
  // enumerable, which the caller must treat as an unusable oracle MDP.
  auto dfs = [&](auto&& self, const Frame& f) -> void {
    if (f.state == mdp.terminal_state()) {
      if (atlas.episodes_.size() >= max_episodes)
        throw std::runtime_error("EpisodeAtlas: episode count exceeds the configured limit");
      atlas.episodes_.push_back({states, actions, f.ret, f.kernel_prob});
      return;
    }
    if (static_cast<int>(actions.size()) == mdp.episode_cap())
      throw std::runtime_error(
          "EpisodeAtlas: probability leak — a path reaches the cap without absorption");
    for (int a = 0; a < mdp.n_actions(); ++a) {
      for (const auto& e : mdp.outgoing(f.state, a)) {
        states.push_back(f.state);
        actions.push_back(a);
        self(self, Frame{e.next, f.kernel_prob * e.prob, f.ret + f.disc * e.reward,
                         f.disc * gamma});
        states.pop_back();
        actions.pop_back();
      }
    }
  };
  dfs(dfs, Frame{mdp.start_state(), 1.0, 0.0, 1.0});

  std::vector<double> rets;
  rets.reserve(atlas.episodes_.size());
  for (const auto& ep : atlas.episodes_) rets.push_back(ep.ret);
  std::sort(rets.begin(), rets.end());
  rets.erase(std::unique(rets.begin(), rets.end()), rets.end());
  atlas.distinct_returns_ = std::move(rets);
  return atlas;
}

double EpisodeAtlas::policy_prob(const AtlasEpisode& ep, const SoftmaxPolicy& policy) const {
  double p = ep.kernel_prob;
  for (std::size_t t = 0; t < ep.actions.size(); ++t)
    p *= policy.prob(ep.states[t], ep.actions[t]);
  return p;
}

Vector EpisodeAtlas::score_sum(const AtlasEpisode& ep, const SoftmaxPolicy& policy) const {
  Vector acc = Vector::Zero(policy.dim());
  for (std::size_t t = 0; t < ep.actions.size(); ++t)
    policy.accumulate_score(ep.states[t], ep.actions[t], acc);
  return acc;
}

double EpisodeAtlas::is_ratio(const AtlasEpisode& ep, const SoftmaxPolicy& target,
                              const SoftmaxPolicy& behavior) const {
  double psi = 1.0;
  for (std::size_t t = 0; t < ep.actions.size(); ++t)
    psi *= target.prob(ep.states[t], ep.actions[t]) /
           behavior.prob(ep.states[t], ep.actions[t]);
  return psi;
}

double exact_cdf(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy, double x) {
  double mass = 0.0;
  for (const auto& ep : atlas.episodes())
    if (ep.ret <= x) mass += atlas.policy_prob(ep, policy);
  return std::clamp(mass, 0.0, 1.0);
}

DiscreteDist return_distribution(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(atlas.episodes().size());
  for (const auto& ep : atlas.episodes())
    atoms.emplace_back(ep.ret, atlas.policy_prob(ep, policy));
  return DiscreteDist::from_atoms(std::move(atoms));
}

double exact_drm(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy,
                 const DistortionFn& g) {
  return drm_exact(return_distribution(atlas, policy), g);
}

Vector exact_grad(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy,
                  const DistortionFn& g) {
  const auto& breakpoints = atlas.distinct_returns();
  const std::size_t n = breakpoints.size();

  // Per-breakpoint increments of F and grad F: grad P_theta(omega) =
  // P_theta(omega) * score_sum(omega).
  std::vector<double> prob_at(n, 0.0);
  std::vector<Vector> grad_at(n, Vector::Zero(policy.dim()));
  for (const auto& ep : atlas.episodes()) {
    const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), ep.ret);
    const auto k = static_cast<std::size_t>(it - breakpoints.begin());
    const double p = atlas.policy_prob(ep, policy);
    prob_at[k] += p;
    grad_at[k] += p * atlas.score_sum(ep, policy);
  }

  Vector grad = Vector::Zero(policy.dim());
  double cdf = 0.0;
  Vector cdf_grad = Vector::Zero(policy.dim());
  for (std::size_t k = 0; k < n; ++k) {
    cdf += prob_at[k];
    cdf_grad += grad_at[k];
    const double upper = (k + 1 < n) ? breakpoints[k + 1] : atlas.m_r();
    const double level = std::clamp(1.0 - cdf, 0.0, 1.0);
    grad += (breakpoints[k] - upper) * g.deriv(level) * cdf_grad;
  }
  return grad;
}

Vector finite_diff_grad(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy,
                        const DistortionFn& g, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_grad: h must be positive");
  Vector grad(policy.dim());
  Vector theta = policy.params();
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double saved = theta(j);
    theta(j) = saved + h;
    const double up = exact_drm(
        atlas, SoftmaxPolicy(policy.n_states(), policy.n_actions(), theta), g);
    theta(j) = saved - h;
    const double down = exact_drm(
        atlas, SoftmaxPolicy(policy.n_states(), policy.n_actions(), theta), g);
    theta(j) = saved;
    grad(j) = (up - down) / (2.0 * h);
  }
  return grad;
}

double BoundConstants::mse_bound_onpolicy(int m) const {
  const double e2 = std::exp(2.0);
  return 32.0 * m_r * m_r * m_e * m_e * m_d * m_d *
         (e2 * m_gprime * m_gprime + m_gdprime * m_gdprime) / static_cast<double>(m);
}

double BoundConstants::mse_bound_offpolicy(int m) const {
  const double e2 = std::exp(2.0);
  return 32.0 * m_r * m_r * m_s * m_s * m_e * m_e * m_d * m_d *
         (e2 * m_gprime * m_gprime + m_gdprime * m_gdprime * m_s * m_s) /
         static_cast<double>(m);
}

BoundConstants bound_constants_for(const EpisodeAtlas& atlas, const DistortionFn& g,
                                   const SoftmaxPolicy* target,
                                   const SoftmaxPolicy* behavior) {
  BoundConstants c{};
  c.m_r = atlas.m_r();
  c.m_e = static_cast<double>(atlas.mdp().episode_cap());
  // Tabular softmax: the score at (s,a) has squared norm
  // (1-pi_a)^2 + sum_{a' != a} pi_{a'}^2 < 2, so M_d = sqrt(2). The Hessian
  // of log pi is -(diag(pi) - pi pi^T) on the state block; for a unit u,
  // u^T (diag(pi) - pi pi^T) u = Var_{A~pi}(u_A) <= (max u - min u)^2 / 4
  // <= ||u||^2 / 2, so M_h = 1/2.
  c.m_d = std::sqrt(2.0);
  c.m_h = 0.5;
  c.m_s = 1.0;
  if (target && behavior) {
    double worst = 0.0;
    for (const auto& ep : atlas.episodes())
      worst = std::max(worst, atlas.is_ratio(ep, *target, *behavior));
    c.m_s = worst;
  }
  const auto gb = g.bound_constants();
  c.m_gprime = gb.m_gprime;
  c.m_gdprime = gb.m_gdprime;
  c.l_rho_prime = 2.0 * c.m_r * c.m_e *
                  (c.m_h * c.m_gprime + c.m_e * c.m_d * c.m_d * (c.m_gprime + c.m_gdprime));
  if (!(c.m_r > 0.0 && c.m_e > 0.0 && c.m_s > 0.0 && c.m_gprime > 0.0) ||
      !(c.m_gdprime >= 0.0))
    throw std::logic_error("bound_constants_for: non-positive constant");
  return c;
}

}  // namespace drmpg
