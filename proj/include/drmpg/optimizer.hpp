#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "drmpg/distortion.hpp"
#include "drmpg/estimators.hpp"
#include "drmpg/mdp.hpp"

namespace drmpg {

enum class TrainMode { OnPolicy, OffPolicy, Reinforce };

/// Training loop configuration. The step-size/batch-size defaults follow the
/// 1/sqrt(N) and ceil(sqrt(N)) schedule under which the non-asymptotic
/// stationarity bounds hold.
struct TrainConfig {
  int n_iterations = 100;
  int batch_size = 10;
  double step_size = 0.1;
  double gamma = 0.99;
  DistortionFn g = DistortionFn::identity();
  double m_r = 1.0;
  std::uint64_t seed = 0;
  TrainMode mode = TrainMode::OnPolicy;

  static TrainConfig with_schedule_defaults(int n_iterations);

  /// N >= 1, m >= 1, alpha >= 0 (zero step-size runs are legal no-ops),
  /// gamma in (0,1).
  void validate() const;
};

struct IterationRecord {
  int iteration;
  double mean_return;
  double batch_drm;  // empirical DRM of the batch returns under cfg.g
  double grad_norm;
  double wall_ms;    // measured; excluded from deterministic artifacts
};

struct TrainTrace {
  std::vector<Vector> thetas;           // N + 1 iterates, theta_0 first
  std::vector<IterationRecord> records; // one per iteration
  Vector theta_r;                       // uniformly drawn from iterates 1..N
  int r_index = 0;

  const Vector& theta_final() const { return thetas.back(); }
};

/// Uniform draw from the iterates {theta_1, ..., theta_N} (theta_0 excluded).
const Vector& pick_random_iterate(const TrainTrace& trace, rng::Engine& eng);

/// DRM-OnP-LR: per iteration, m on-policy rollouts under theta_k, the
/// order-statistic gradient estimate, and the ascent step
/// theta_{k+1} = theta_k + alpha * grad. Fully deterministic given the seed;
/// aborts on non-finite parameters.
TrainTrace drm_onp_lr(const EpisodicMdp& mdp, const Vector& init_theta,
                      const TrainConfig& cfg);

/// DRM-OffP-LR: episodes are generated fresh each iteration by the fixed
/// behavior policy; score sums and IS ratios are computed against the current
/// theta_k.
TrainTrace drm_offp_lr(const EpisodicMdp& mdp, const Vector& init_theta,
                       const Vector& behavior_theta, const TrainConfig& cfg);

/// Mini-batched REINFORCE baseline: grad = (1/m) sum_i R_i grad_l_i with the
/// same loop structure and rollout seeding as the DRM optimizers.
TrainTrace reinforce(const EpisodicMdp& mdp, const Vector& init_theta,
                     const TrainConfig& cfg);

}  // namespace drmpg
