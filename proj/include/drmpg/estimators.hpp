#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "drmpg/distortion.hpp"
#include "drmpg/mdp.hpp"

namespace drmpg {

/// Per-order-statistic audit record: the gap R_(i) - R_(i+1) (for i = m the
/// boundary gap R_(m) - M_r), the g' weight applied, the running IS-ratio
/// partial sum, and the norm of the weighted partial score sum.
struct OrderStatTerm {
  int i;
  double sorted_return;
  double gap;
  double weight;
  double cum_is_ratio;
  double partial_score_norm;
};

/// A gradient estimate plus the inputs needed to audit it.
struct GradReport {
  Vector grad;
  int m = 0;
  double m_r = 0.0;
  std::vector<OrderStatTerm> terms;  // filled only when audit was requested
};

/// On-policy order-statistic estimator of grad rho_g(theta) from m episodes:
/// sort by return ascending, then
///   (1/m) sum_{i<m} (R_(i) - R_(i+1)) g'(1 - i/m) sum_{j<=i} grad_l_(j)
///   + (1/m) (R_(m) - M_r) g'_+(0) sum_{j<=m} grad_l_(j).
/// Ties are ordered by (return, episode content hash) so the result is
/// invariant under permutations of the input. Requires is_ratio == 1 and
/// |ret| <= M_r for every episode.
GradReport grad_onpolicy(std::span<const Episode> episodes, const DistortionFn& g,
                         double m_r, bool audit = false);

/// Off-policy variant: sort by behavior return ascending, weight score sums
/// by the per-episode IS ratios, and evaluate g' at the clipped EDF estimate
/// 1 - min{1, (1/m) sum_{j<=i} psi_(j)}. The clip applies only inside g';
/// the score-sum weights use the raw psi. With psi identically 1 this
/// reproduces grad_onpolicy exactly.
GradReport grad_offpolicy(std::span<const Episode> episodes, const DistortionFn& g,
                          double m_r, bool audit = false);

/// Diagnostic estimate of grad F_{R_theta}(x): the mean score sum over
/// episodes with return <= x.
Vector cdf_grad_onpolicy(std::span<const Episode> episodes, double x);

/// One CSV row per order statistic (header included).
void write_terms_csv(const GradReport& report, std::ostream& out);

}  // namespace drmpg
