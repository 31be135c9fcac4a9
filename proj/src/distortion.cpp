#include "drmpg/distortion.hpp"

#include <cmath>
#include <stdexcept>

namespace drmpg {

namespace {

constexpr double kDomainTol = 1e-12;

double checked(double s) {
  if (s < -kDomainTol || s > 1.0 + kDomainTol)
    throw std::domain_error("distortion argument outside [0,1]: s=" + std::to_string(s));
  return s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
}

}  // namespace

DistortionFn::DistortionFn(DistortionFamily family, double r) : family_(family), r_(r) {
  const char* bad = nullptr;
  switch (family_) {
    case DistortionFamily::DualPower:
      if (!(r >= 2.0)) bad = "dual_power requires r >= 2";
      break;
    case DistortionFamily::Quadratic:
      if (!(r >= 0.0 && r <= 1.0)) bad = "quadratic requires 0 <= r <= 1";
      break;
    case DistortionFamily::Exponential:
      if (!(r > 0.0)) bad = "exponential requires r > 0";
      break;
    case DistortionFamily::SquareRoot:
      if (!(r > 0.0)) bad = "square_root requires r > 0";
      break;
    case DistortionFamily::Logarithmic:
      if (!(r > 0.0)) bad = "logarithmic requires r > 0";
      break;
    case DistortionFamily::Identity:
      r_ = 0.0;
      break;
  }
  if (!std::isfinite(r)) bad = "parameter r must be finite";
  if (bad) throw std::invalid_argument(std::string("DistortionFn: ") + bad);
}

double DistortionFn::eval(double s) const {
  s = checked(s);
  switch (family_) {
    case DistortionFamily::DualPower:
      return 1.0 - std::pow(1.0 - s, r_);
    case DistortionFamily::Quadratic:
      return (1.0 + r_) * s - r_ * s * s;
    case DistortionFamily::Exponential:
      return (1.0 - std::exp(-r_ * s)) / (1.0 - std::exp(-r_));
    case DistortionFamily::SquareRoot:
      return (std::sqrt(1.0 + r_ * s) - 1.0) / (std::sqrt(1.0 + r_) - 1.0);
    case DistortionFamily::Logarithmic:
      return std::log1p(r_ * s) / std::log1p(r_);
    case DistortionFamily::Identity:
      return s;
  }
  throw std::logic_error("DistortionFn: unknown family");
}

double DistortionFn::deriv(double s) const {
  s = checked(s);
  switch (family_) {
    case DistortionFamily::DualPower:
      return r_ * std::pow(1.0 - s, r_ - 1.0);
    case DistortionFamily::Quadratic:
      return (1.0 + r_) - 2.0 * r_ * s;
    case DistortionFamily::Exponential:
      return r_ * std::exp(-r_ * s) / (1.0 - std::exp(-r_));
    case DistortionFamily::SquareRoot:
      return 0.5 * r_ / (std::sqrt(1.0 + r_ * s) * (std::sqrt(1.0 + r_) - 1.0));
    case DistortionFamily::Logarithmic:
      return r_ / ((1.0 + r_ * s) * std::log1p(r_));
    case DistortionFamily::Identity:
      return 1.0;
  }
  throw std::logic_error("DistortionFn: unknown family");
}

double DistortionFn::second_deriv(double s) const {
  s = checked(s);
  switch (family_) {
    case DistortionFamily::DualPower:
      return -r_ * (r_ - 1.0) * std::pow(1.0 - s, r_ - 2.0);
    case DistortionFamily::Quadratic:
      return -2.0 * r_;
    case DistortionFamily::Exponential:
      return -r_ * r_ * std::exp(-r_ * s) / (1.0 - std::exp(-r_));
    case DistortionFamily::SquareRoot: {
      const double u = 1.0 + r_ * s;
      return -0.25 * r_ * r_ / (u * std::sqrt(u) * (std::sqrt(1.0 + r_) - 1.0));
    }
    case DistortionFamily::Logarithmic: {
      const double u = 1.0 + r_ * s;
      return -r_ * r_ / (u * u * std::log1p(r_));
    }
    case DistortionFamily::Identity:
      return 0.0;
  }
  throw std::logic_error("DistortionFn: unknown family");
}

DistortionFn::Bounds DistortionFn::bound_constants() const {
  // Every non-identity family has |g'| and |g''| decreasing in s, so the
  // suprema sit at s = 0 (dual_power with r = 2 and quadratic are constant
  // in |g''|, which the same endpoint evaluation covers).
  switch (family_) {
    case DistortionFamily::DualPower:
      return {r_, r_ * (r_ - 1.0)};
    case DistortionFamily::Quadratic:
      return {1.0 + r_, 2.0 * r_};
    case DistortionFamily::Exponential:
      return {r_ / (1.0 - std::exp(-r_)), r_ * r_ / (1.0 - std::exp(-r_))};
    case DistortionFamily::SquareRoot: {
      const double denom = std::sqrt(1.0 + r_) - 1.0;
      return {0.5 * r_ / denom, 0.25 * r_ * r_ / denom};
    }
    case DistortionFamily::Logarithmic:
      return {r_ / std::log1p(r_), r_ * r_ / std::log1p(r_)};
    case DistortionFamily::Identity:
      return {1.0, 0.0};
  }
  throw std::logic_error("DistortionFn: unknown family");
}

std::string DistortionFn::name() const {
  switch (family_) {
    case DistortionFamily::DualPower: return "dual_power";
    case DistortionFamily::Quadratic: return "quadratic";
    case DistortionFamily::Exponential: return "exponential";
    case DistortionFamily::SquareRoot: return "square_root";
    case DistortionFamily::Logarithmic: return "logarithmic";
    case DistortionFamily::Identity: return "identity";
  }
  throw std::logic_error("DistortionFn: unknown family");
}

DistortionFn DistortionFn::from_name(const std::string& name, double r) {
  if (name == "dual_power") return dual_power(r);
  if (name == "quadratic") return quadratic(r);
  if (name == "exponential") return exponential(r);
  if (name == "square_root") return square_root(r);
  if (name == "logarithmic") return logarithmic(r);
  if (name == "identity") return identity();
  throw std::invalid_argument("DistortionFn: unknown family name '" + name + "'");
}

}  // namespace drmpg
