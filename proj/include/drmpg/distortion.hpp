#pragma once

#include <string>

namespace drmpg {

enum class DistortionFamily {
  DualPower,
  Quadratic,
  Exponential,
  SquareRoot,
  Logarithmic,
  Identity,
};

/// A distortion function g: [0,1] -> [0,1], non-decreasing with g(0)=0 and
/// g(1)=1, together with its exact first and second derivatives and the
/// suprema M_g' = sup |g'| and M_g'' = sup |g''| over (0,1). Derivatives are
/// closed-form (not numeric) so the analysis constants are exact.
///
/// Families and parameter domains:
///   dual_power    g(s) = 1 - (1-s)^r,                      r >= 2
///   quadratic     g(s) = (1+r)s - r s^2,                   0 <= r <= 1
///   exponential   g(s) = (1 - e^{-rs}) / (1 - e^{-r}),     r > 0
///   square_root   g(s) = (sqrt(1+rs) - 1)/(sqrt(1+r) - 1), r > 0
///   logarithmic   g(s) = log(1+rs) / log(1+r),             r > 0
///   identity      g(s) = s (degenerate; the induced risk measure is the mean)
///
/// All non-identity families are concave on [0,1] in their parameter domains.
/// Immutable after construction; safe to share across threads.
class DistortionFn {
 public:
  DistortionFn(DistortionFamily family, double r);

  static DistortionFn dual_power(double r) { return {DistortionFamily::DualPower, r}; }
  static DistortionFn quadratic(double r) { return {DistortionFamily::Quadratic, r}; }
  static DistortionFn exponential(double r) { return {DistortionFamily::Exponential, r}; }
  static DistortionFn square_root(double r) { return {DistortionFamily::SquareRoot, r}; }
  static DistortionFn logarithmic(double r) { return {DistortionFamily::Logarithmic, r}; }
  static DistortionFn identity() { return {DistortionFamily::Identity, 0.0}; }

  /// g(s). Throws std::domain_error if s is outside [0,1] by more than 1e-12.
  double eval(double s) const;

  /// g'(s); the one-sided derivative at the endpoints.
  double deriv(double s) const;

  /// g''(s); 0 for identity.
  double second_deriv(double s) const;

  /// g'_+(0), the right derivative at zero (boundary weight of the
  /// order-statistic estimators).
  double right_deriv_zero() const { return deriv(0.0); }

  struct Bounds {
    double m_gprime;   // sup |g'| over (0,1)
    double m_gdprime;  // sup |g''| over (0,1)
  };

  /// Tight suprema of |g'| and |g''|; for the concave families both are
  /// attained at s -> 0 (quadratic's |g''| is constant).
  Bounds bound_constants() const;

  DistortionFamily family() const { return family_; }
  double r() const { return r_; }

  std::string name() const;
  static DistortionFn from_name(const std::string& name, double r);

 private:
  DistortionFamily family_;
  double r_;
};

}  // namespace drmpg
