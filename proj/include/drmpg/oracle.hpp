#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "drmpg/distortion.hpp"
#include "drmpg/drm.hpp"
#include "drmpg/mdp.hpp"

namespace drmpg {

/// One fully enumerated episode: the (s, a) path, its discounted return, and
/// the policy-independent kernel probability prod_t p(s_{t+1}|s_t, a_t).
struct AtlasEpisode {
  std::vector<int> states;
  std::vector<int> actions;
  double ret = 0.0;
  double kernel_prob = 1.0;
};

/// Exhaustive depth-first enumeration of every episode of an MDP up to the
/// cap. Construction fails if any positive-kernel-probability path reaches
/// the cap without being absorbed (the return distribution would then not be
/// fully enumerable) or if the episode count exceeds the limit. Under any
/// softmax policy the enumerated probabilities sum to exactly 1.
class EpisodeAtlas {
 public:
  static EpisodeAtlas enumerate(const EpisodicMdp& mdp, double gamma,
                                std::size_t max_episodes = 1000000);

  std::span<const AtlasEpisode> episodes() const { return episodes_; }
  const EpisodicMdp& mdp() const { return mdp_; }
  double gamma() const { return gamma_; }

  /// Cap-aware tight return bound for this MDP and gamma; every enumerated
  /// |ret| is below it.
  double m_r() const { return m_r_; }

  /// Sorted distinct returns (the breakpoints of F_{R_theta}).
  const std::vector<double>& distinct_returns() const { return distinct_returns_; }

  double policy_prob(const AtlasEpisode& ep, const SoftmaxPolicy& policy) const;
  Vector score_sum(const AtlasEpisode& ep, const SoftmaxPolicy& policy) const;
  double is_ratio(const AtlasEpisode& ep, const SoftmaxPolicy& target,
                  const SoftmaxPolicy& behavior) const;

 private:
  EpisodeAtlas(EpisodicMdp mdp, double gamma);

  EpisodicMdp mdp_;
  double gamma_;
  double m_r_;
  std::vector<AtlasEpisode> episodes_;
  std::vector<double> distinct_returns_;
};

/// F_{R_theta}(x) = sum over episodes with return <= x of P_theta(omega).
double exact_cdf(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy, double x);

/// The exact return distribution under the policy, with equal returns merged
/// into one atom.
DiscreteDist return_distribution(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy);

/// Exact DRM rho_g(theta) via the Choquet closed form of the step CDF.
double exact_drm(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy,
                 const DistortionFn& g);

/// Exact gradient of rho_g(theta): F and grad F are piecewise constant in x
/// with breakpoints at the distinct returns, so the integral
/// -int g'(1 - F(x)) grad F(x) dx collapses to a finite sum over segments,
/// plus the top segment up to M_r (whose grad-F coefficient is the expected
/// score, analytically zero).
Vector exact_grad(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy,
                  const DistortionFn& g);

/// Independent check: central finite differences of exact_drm in each
/// parameter direction with step h.
Vector finite_diff_grad(const EpisodeAtlas& atlas, const SoftmaxPolicy& policy,
                        const DistortionFn& g, double h);

/// The constants the MSE and smoothness bounds are built from.
struct BoundConstants {
  double m_r;        // return bound
  double m_e;        // episode cap
  double m_d;        // sup ||grad log pi||
  double m_h;        // sup ||hess log pi||
  double m_s;        // sup IS ratio (1 on-policy)
  double m_gprime;   // sup |g'|
  double m_gdprime;  // sup |g''|
  double l_rho_prime;  // 2 M_r M_e (M_h M_g' + M_e M_d^2 (M_g' + M_g''))

  /// 32 M_r^2 M_e^2 M_d^2 (e^2 M_g'^2 + M_g''^2) / m
  double mse_bound_onpolicy(int m) const;
  /// 32 M_r^2 M_s^2 M_e^2 M_d^2 (e^2 M_g'^2 + M_g''^2 M_s^2) / m
  double mse_bound_offpolicy(int m) const;
};

/// Assembles the constants for the tabular softmax class on an enumerable
/// MDP. When fixed behavior and target policies are supplied, M_s is the
/// exact maximum of the IS ratio over the atlas; otherwise M_s = 1.
BoundConstants bound_constants_for(const EpisodeAtlas& atlas, const DistortionFn& g,
                                   const SoftmaxPolicy* target = nullptr,
                                   const SoftmaxPolicy* behavior = nullptr);

}  // namespace drmpg
