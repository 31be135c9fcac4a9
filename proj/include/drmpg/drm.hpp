#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "drmpg/distortion.hpp"

namespace drmpg {

/// Finite discrete distribution with strictly increasing support.
struct DiscreteDist {
  std::vector<double> values;  // strictly increasing
  std::vector<double> probs;   // non-negative, sums to 1 within 1e-12

  /// Validates and constructs. Throws std::invalid_argument on violation.
  static DiscreteDist make(std::vector<double> values, std::vector<double> probs);

  /// Builds a distribution from unsorted (value, prob) atoms, merging atoms
  /// with exactly equal values.
  static DiscreteDist from_atoms(std::vector<std::pair<double, double>> atoms);

  double mean() const;
};

/// A batch of sampled returns.
struct Sample {
  std::vector<double> returns;

  /// Checks |returns[i]| <= m_r for all i when a bound is supplied.
  void validate(std::optional<double> m_r = std::nullopt) const;
};

/// Distortion risk measure of an exact step-CDF distribution: the Choquet
/// integral collapses to v_1 + sum_{i>=2} (v_i - v_{i-1}) g(1 - F(v_{i-1})).
double drm_exact(const DiscreteDist& dist, const DistortionFn& g);

/// DRM of the empirical distribution of a sample, as the L-statistic
/// sum_i R_(i) [g((m-i+1)/m) - g((m-i)/m)] over ascending order statistics.
/// Ties contribute zero-width weight gaps through the sorted multiset.
double drm_empirical(std::span<const double> returns, const DistortionFn& g);
double drm_empirical(const Sample& sample, const DistortionFn& g);

/// Empirical distribution function: fraction of returns <= x.
double edf(std::span<const double> returns, double x);

}  // namespace drmpg
