#include "drmpg/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace drmpg {

namespace {

// Compensated (Kahan) accumulator for d-vectors; batch sizes up to 1e4 with
// cancelling gap terms need better than naive summation.
class KahanVector {
 public:
  explicit KahanVector(Eigen::Index d) : sum_(Vector::Zero(d)), comp_(Vector::Zero(d)) {}

  void add(const Vector& v) {
    const Vector y = v - comp_;
    const Vector t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  void add_scaled(double c, const Vector& v) {
    const Vector y = c * v - comp_;
    const Vector t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  const Vector& value() const { return sum_; }

 private:
  Vector sum_;
  Vector comp_;
};

std::uint64_t hash_bytes(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ull;  // FNV-1a
  }
  return h;
}

// Content hash used only as a sort tie-breaker among equal returns, so the
// estimate does not depend on input order even with ties.
std::uint64_t episode_hash(const Episode& ep) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  h = hash_bytes(h, ep.states.data(), ep.states.size() * sizeof(int));
  h = hash_bytes(h, ep.actions.data(), ep.actions.size() * sizeof(int));
  h = hash_bytes(h, &ep.ret, sizeof ep.ret);
  h = hash_bytes(h, &ep.is_ratio, sizeof ep.is_ratio);
  return h;
}

std::vector<std::size_t> sorted_order(std::span<const Episode> episodes) {
  std::vector<std::uint64_t> hashes(episodes.size());
  for (std::size_t k = 0; k < episodes.size(); ++k) hashes[k] = episode_hash(episodes[k]);
  std::vector<std::size_t> order(episodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (episodes[a].ret != episodes[b].ret) return episodes[a].ret < episodes[b].ret;
    return hashes[a] < hashes[b];
  });
  return order;
}

Eigen::Index check_batch(std::span<const Episode> episodes, double m_r, bool require_onpolicy) {
  if (episodes.empty()) throw std::invalid_argument("gradient estimator: empty batch");
  const Eigen::Index d = episodes.front().score_sum.size();
  for (const auto& ep : episodes) {
    if (ep.score_sum.size() != d)
      throw std::invalid_argument("gradient estimator: inconsistent score dimensions");
    if (std::abs(ep.ret) > m_r)
      throw std::invalid_argument("gradient estimator: |return| exceeds M_r; the bound is wrong");
    if (require_onpolicy && ep.is_ratio != 1.0)
      throw std::invalid_argument("grad_onpolicy: batch contains off-policy episodes");
    if (!(ep.is_ratio >= 0.0) || !std::isfinite(ep.is_ratio))
      throw std::invalid_argument("gradient estimator: IS ratio must be finite and >= 0");
  }
  return d;
}

}  // namespace

GradReport grad_onpolicy(std::span<const Episode> episodes, const DistortionFn& g,
                         double m_r, bool audit) {
  const Eigen::Index d = check_batch(episodes, m_r, /*require_onpolicy=*/true);
  const auto order = sorted_order(episodes);
  const auto m = static_cast<double>(episodes.size());

  GradReport report;
  report.m = static_cast<int>(episodes.size());
  report.m_r = m_r;

  KahanVector prefix(d);  // sum_{j<=i} grad_l_(j)
  KahanVector grad(d);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Episode& lo = episodes[order[i - 1]];
    const Episode& hi = episodes[order[i]];
    prefix.add(lo.score_sum);
    const double gap = lo.ret - hi.ret;
    const double w = g.deriv(1.0 - static_cast<double>(i) / m);
    grad.add_scaled(gap * w, prefix.value());
    if (audit)
      report.terms.push_back({static_cast<int>(i), lo.ret, gap, w,
                              static_cast<double>(i), prefix.value().norm()});
  }
  const Episode& top = episodes[order.back()];
  prefix.add(top.score_sum);
  const double w0 = g.right_deriv_zero();
  grad.add_scaled((top.ret - m_r) * w0, prefix.value());
  if (audit)
    report.terms.push_back({static_cast<int>(order.size()), top.ret, top.ret - m_r, w0,
                            m, prefix.value().norm()});

  report.grad = grad.value() / m;
  return report;
}

GradReport grad_offpolicy(std::span<const Episode> episodes, const DistortionFn& g,
                          double m_r, bool audit) {
  const Eigen::Index d = check_batch(episodes, m_r, /*require_onpolicy=*/false);
  const auto order = sorted_order(episodes);
  const auto m = static_cast<double>(episodes.size());

  GradReport report;
  report.m = static_cast<int>(episodes.size());
  report.m_r = m_r;

  KahanVector prefix(d);     // sum_{j<=i} psi_(j) grad_l_(j)
  double cum_psi = 0.0;      // sum_{j<=i} psi_(j)
  double cum_psi_comp = 0.0;
  auto add_psi = [&](double psi) {
    const double y = psi - cum_psi_comp;
    const double t = cum_psi + y;
    cum_psi_comp = (t - cum_psi) - y;
    cum_psi = t;
  };
  KahanVector grad(d);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Episode& lo = episodes[order[i - 1]];
    const Episode& hi = episodes[order[i]];
    prefix.add_scaled(lo.is_ratio, lo.score_sum);
    add_psi(lo.is_ratio);
    const double gap = lo.ret - hi.ret;
    // The clip keeps the estimated CDF level inside [0,1]; only the g'
    // argument is clipped, the score weights keep the raw psi.
    const double level = std::min(1.0, cum_psi / m);
    const double w = g.deriv(1.0 - level);
    grad.add_scaled(gap * w, prefix.value());
    if (audit)
      report.terms.push_back({static_cast<int>(i), lo.ret, gap, w, cum_psi,
                              prefix.value().norm()});
  }
  const Episode& top = episodes[order.back()];
  prefix.add_scaled(top.is_ratio, top.score_sum);
  add_psi(top.is_ratio);
  const double w0 = g.right_deriv_zero();
  grad.add_scaled((top.ret - m_r) * w0, prefix.value());
  if (audit)
    report.terms.push_back({static_cast<int>(order.size()), top.ret, top.ret - m_r, w0,
                            cum_psi, prefix.value().norm()});

  report.grad = grad.value() / m;
  return report;
}

Vector cdf_grad_onpolicy(std::span<const Episode> episodes, double x) {
  if (episodes.empty()) throw std::invalid_argument("cdf_grad_onpolicy: empty batch");
  Vector acc = Vector::Zero(episodes.front().score_sum.size());
  for (const auto& ep : episodes)
    if (ep.ret <= x) acc += ep.score_sum;
  return acc / static_cast<double>(episodes.size());
}

void write_terms_csv(const GradReport& report, std::ostream& out) {
  out << "i,sorted_return,gap,gprime_weight,cum_is_ratio,partial_score_norm\n";
  char buf[200];
  for (const auto& t : report.terms) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", t.i,
                  t.sorted_return, t.gap, t.weight, t.cum_is_ratio, t.partial_score_norm);
    out << buf;
  }
}

}  // namespace drmpg
