#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "drmpg/rng.hpp"

namespace drmpg {

using Vector = Eigen::VectorXd;

struct TransitionEntry {
  int next;
  double prob;
  double reward;
};

/// Finite episodic MDP with a distinguished absorbing terminal state and a
/// hard episode cap M_e. Rewards live on (s, a, s') triples. Immutable after
/// validate(); rollouts may share one instance across threads.
class EpisodicMdp {
 public:
  EpisodicMdp(int n_states, int n_actions, int start_state, int terminal_state,
              int episode_cap);

  void add_transition(int s, int a, int next, double prob, double reward);

  /// Checks that every (s,a) row sums to 1 within 1e-12, the terminal state
  /// self-loops with zero reward under every action, and the cap is >= 1.
  /// Throws std::invalid_argument otherwise. Must be called before use;
  /// fills in terminal self-loops that were not declared explicitly.
  void validate();

  std::span<const TransitionEntry> outgoing(int s, int a) const {
    return rows_[static_cast<std::size_t>(s) * n_actions_ + a];
  }

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  int start_state() const { return start_state_; }
  int terminal_state() const { return terminal_state_; }
  int episode_cap() const { return episode_cap_; }

  /// max |r(s,a,s')| over all transitions.
  double r_max() const { return r_max_; }

 private:
  int n_states_;
  int n_actions_;
  int start_state_;
  int terminal_state_;
  int episode_cap_;
  double r_max_ = 0.0;
  bool validated_ = false;
  std::vector<std::vector<TransitionEntry>> rows_;
};

/// Tabular softmax policy pi_theta(a|s) = exp(theta[s,a]) / sum_a' exp(theta[s,a']),
/// strictly positive everywhere, so any two softmax policies are mutually
/// absolutely continuous. theta has dimension d = n_states * n_actions,
/// flattened row-major by state.
class SoftmaxPolicy {
 public:
  SoftmaxPolicy(int n_states, int n_actions);
  SoftmaxPolicy(int n_states, int n_actions, Vector theta);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  int dim() const { return static_cast<int>(theta_.size()); }
  const Vector& params() const { return theta_; }

  /// Action distribution at state s (max-shifted softmax).
  Vector probs(int s) const;
  double prob(int s, int a) const;
  double log_prob(int s, int a) const;

  /// Score function grad_theta log pi(a|s): within the state-s block the
  /// component for action a' is 1{a'=a} - pi(a'|s); zero elsewhere.
  ///
  /// Its squared norm is (1-pi_a)^2 + sum_{a' != a} pi_{a'}^2, maximized in
  /// the limit pi_a -> 0 with the mass on a single other action, giving the
  /// uniform bound ||grad log pi|| <= sqrt(2) for the tabular class.
  Vector score(int s, int a) const;

  /// Adds score(s, a) into acc without allocating.
  void accumulate_score(int s, int a, Vector& acc) const;

 private:
  int n_states_;
  int n_actions_;
  Vector theta_;
};

/// One rollout. states/actions both have length T; score_sum is
/// sum_t grad log pi_target(A_t|S_t); is_ratio is the trajectory importance
/// sampling ratio of target w.r.t. behavior (exactly 1 on-policy).
struct Episode {
  std::vector<int> states;
  std::vector<int> actions;
  double ret = 0.0;
  int length = 0;
  Vector score_sum;
  double is_ratio = 1.0;
};

/// Samples s' ~ p(.|s,a); stores the transition reward in *reward.
int sample_next_state(const EpisodicMdp& mdp, int s, int a, rng::Engine& eng,
                      double* reward);

/// Simulates one episode: actions drawn from `behavior`, discounted return
/// accumulated with gamma, truncation at the episode cap (no bonus/penalty),
/// score sums and the IS ratio computed under `target`. With identical
/// behavior/target parameters the per-step ratios are exactly 1.0 and so is
/// the product. Throws if a zero behavior probability is ever selected.
Episode rollout(const EpisodicMdp& mdp, const SoftmaxPolicy& behavior,
                const SoftmaxPolicy& target, double gamma, std::uint64_t rng_seed);

/// On-policy convenience overload (behavior == target).
Episode rollout(const EpisodicMdp& mdp, const SoftmaxPolicy& policy, double gamma,
                std::uint64_t rng_seed);

/// Cap-aware return bound r_max * (1 - gamma^M_e) / (1 - gamma), which never
/// exceeds the geometric bound r_max / (1 - gamma).
double tight_return_bound(const EpisodicMdp& mdp, double gamma);

// --- Frozen Lake -----------------------------------------------------------

struct FrozenLakeConfig {
  double slip = 0.9;           // probability of moving in the chosen direction
  double step_reward = -0.25;  // reward for landing on a frozen cell
  double hole_reward = -10.0;
  double goal_reward = 10.0;
  int episode_cap = 100;
};

/// Builds the gridworld from a text map (one row per line, characters
/// S/F/H/G, exactly one S, at least one G). The agent moves in the chosen
/// direction with probability `slip` and in each perpendicular direction
/// with probability (1-slip)/2; moving off-grid leaves it in place. Landing
/// on H or G transitions to the terminal state with the hole/goal reward.
/// State ids: terminal = 0, cell (row, col) = 1 + row * n_cols + col.
EpisodicMdp frozen_lake(const std::string& layout, const FrozenLakeConfig& cfg = {});

/// The default 6x9 map: start top-left, goal bottom-right, 8 holes mined
/// along the diagonal so the short path is risky and the border detour is
/// comparatively safe.
const std::string& default_frozen_lake_layout();

// --- Plain-text MDP descriptions and policy snapshots -----------------------

/// Parses the plain-text MDP format:
///   states N / actions A / start S / terminal T / cap C
///   t <s> <a> <s'> <prob> <reward>     (one line per transition entry)
/// '#' starts a comment. The result is validated.
EpisodicMdp parse_mdp_text(const std::string& text);

/// Writes a policy as a flat parameter array with an (n_states, n_actions)
/// header line.
void save_policy(std::ostream& out, const SoftmaxPolicy& policy);
SoftmaxPolicy load_policy(std::istream& in);

}  // namespace drmpg
