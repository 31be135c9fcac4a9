#include "drmpg/drm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace drmpg {

namespace {
constexpr double kProbTol = 1e-12;
}

DiscreteDist DiscreteDist::make(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("DiscreteDist: values/probs must be non-empty and equal-sized");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw std::invalid_argument("DiscreteDist: values must be strictly increasing");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("DiscreteDist: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTol)
    throw std::invalid_argument("DiscreteDist: probabilities sum to " + std::to_string(total));
  return {std::move(values), std::move(probs)};
}

DiscreteDist DiscreteDist::from_atoms(std::vector<std::pair<double, double>> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> values, probs;
  for (const auto& [v, p] : atoms) {
    if (!values.empty() && v == values.back()) {
      probs.back() += p;
    } else {
      values.push_back(v);
      probs.push_back(p);
    }
  }
  return make(std::move(values), std::move(probs));
}

double DiscreteDist::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
  return m;
}

void Sample::validate(std::optional<double> m_r) const {
  if (returns.empty()) throw std::invalid_argument("Sample: empty");
  if (m_r) {
    for (double r : returns)
      if (std::abs(r) > *m_r)
        throw std::invalid_argument("Sample: |return| exceeds the stated bound M_r");
  }
}

double drm_exact(const DiscreteDist& dist, const DistortionFn& g) {
  const auto& v = dist.values;
  const auto& p = dist.probs;
  double acc = v.front();
  double cdf = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    cdf += p[i - 1];
    acc += (v[i] - v[i - 1]) * g.eval(std::clamp(1.0 - cdf, 0.0, 1.0));
  }
  return acc;
}

double drm_empirical(std::span<const double> returns, const DistortionFn& g) {
  if (returns.empty()) throw std::invalid_argument("drm_empirical: empty sample");
  std::vector<double> sorted(returns.begin(), returns.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double acc = 0.0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    const double hi = g.eval((m - static_cast<double>(i) + 1.0) / m);
    const double lo = g.eval((m - static_cast<double>(i)) / m);
    acc += sorted[i - 1] * (hi - lo);
  }
  return acc;
}

double drm_empirical(const Sample& sample, const DistortionFn& g) {
  return drm_empirical(std::span<const double>(sample.returns), g);
}

double edf(std::span<const double> returns, double x) {
  if (returns.empty()) throw std::invalid_argument("edf: empty sample");
  const auto count = std::count_if(returns.begin(), returns.end(),
                                   [x](double r) { return r <= x; });
  return static_cast<double>(count) / static_cast<double>(returns.size());
}

}  // namespace drmpg
