#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "drmpg/distortion.hpp"

using drmpg::DistortionFn;

namespace {

std::vector<DistortionFn> table_families() {
  return {DistortionFn::dual_power(2.0),  DistortionFn::dual_power(3.5),
          DistortionFn::quadratic(1.0),   DistortionFn::quadratic(0.3),
          DistortionFn::exponential(1.0), DistortionFn::exponential(4.0),
          DistortionFn::square_root(1.0), DistortionFn::square_root(9.0),
          DistortionFn::logarithmic(1.0), DistortionFn::logarithmic(5.0)};
}

std::vector<DistortionFn> all_fns() {
  auto fns = table_families();
  fns.push_back(DistortionFn::identity());
  return fns;
}

// Independent oracle for the derivative operations: central differences of
// the level below.
double fd_first(const DistortionFn& g, double s, double h) {
  return (g.eval(s + h) - g.eval(s - h)) / (2.0 * h);
}

double fd_second(const DistortionFn& g, double s, double h) {
  return (g.deriv(s + h) - g.deriv(s - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE_BEGIN("distortion");

TEST_CASE("closed-form values match direct Table-1 evaluation") {
  CHECK(DistortionFn::dual_power(2.0).eval(0.5) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(DistortionFn::logarithmic(1.0).eval(0.5) ==
        doctest::Approx(std::log(1.5) / std::log(2.0)).epsilon(1e-14));
  CHECK(DistortionFn::dual_power(2.0).deriv(0.0) == doctest::Approx(2.0));
  CHECK(DistortionFn::logarithmic(1.0).deriv(0.0) ==
        doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-14));
  CHECK(DistortionFn::identity().deriv(0.77) == 1.0);
  CHECK(DistortionFn::identity().second_deriv(0.3) == 0.0);
  CHECK(DistortionFn::dual_power(2.0).second_deriv(0.5) == doctest::Approx(-2.0));
  CHECK(DistortionFn::quadratic(1.0).second_deriv(0.42) == doctest::Approx(-2.0));
}

TEST_CASE("right derivative at zero") {
  CHECK(DistortionFn::dual_power(3.0).right_deriv_zero() == doctest::Approx(3.0));
  CHECK(DistortionFn::identity().right_deriv_zero() == 1.0);
  CHECK(DistortionFn::exponential(1.0).right_deriv_zero() ==
        doctest::Approx(1.0 / (1.0 - std::exp(-1.0))).epsilon(1e-14));
  for (const auto& g : all_fns())
    CHECK(g.right_deriv_zero() == g.deriv(0.0));
}

TEST_CASE("bound constants") {
  auto b = DistortionFn::dual_power(2.0).bound_constants();
  CHECK(b.m_gprime == doctest::Approx(2.0));
  CHECK(b.m_gdprime == doctest::Approx(2.0));
  b = DistortionFn::identity().bound_constants();
  CHECK(b.m_gprime == 1.0);
  CHECK(b.m_gdprime == 0.0);
  b = DistortionFn::quadratic(0.5).bound_constants();
  CHECK(b.m_gprime == doctest::Approx(1.5));
  CHECK(b.m_gdprime == doctest::Approx(1.0));
}

TEST_CASE("parameter domains enforced at construction") {
  CHECK_THROWS_AS(DistortionFn::dual_power(1.5), std::invalid_argument);
  CHECK_THROWS_AS(DistortionFn::quadratic(1.2), std::invalid_argument);
  CHECK_THROWS_AS(DistortionFn::quadratic(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(DistortionFn::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DistortionFn::square_root(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(DistortionFn::logarithmic(0.0), std::invalid_argument);
  CHECK_NOTHROW(DistortionFn::dual_power(2.0));
  CHECK_NOTHROW(DistortionFn::quadratic(0.0));
}

TEST_CASE("domain error outside [0,1]") {
  const auto g = DistortionFn::logarithmic(1.0);
  CHECK_THROWS_AS(g.eval(-0.001), std::domain_error);
  CHECK_THROWS_AS(g.eval(1.001), std::domain_error);
  CHECK_THROWS_AS(g.deriv(2.0), std::domain_error);
  // within tolerance: clamped, not rejected
  CHECK(g.eval(-1e-13) == 0.0);
  CHECK(g.eval(1.0 + 1e-13) == 1.0);
}

TEST_CASE("grid properties: range, endpoints, monotonicity") {
  for (const auto& g : all_fns()) {
    CAPTURE(g.name());
    CAPTURE(g.r());
    CHECK(std::abs(g.eval(0.0)) <= 1e-15);
    CHECK(std::abs(g.eval(1.0) - 1.0) <= 1e-15);
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double s = static_cast<double>(i) / 1000.0;
      const double v = g.eval(s);
      CHECK(v >= -1e-15);
      CHECK(v <= 1.0 + 1e-15);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("derivatives match finite differences") {
  for (const auto& g : all_fns()) {
    CAPTURE(g.name());
    CAPTURE(g.r());
    for (int i = 1; i < 50; ++i) {
      const double s = static_cast<double>(i) / 50.0;
      if (s >= 1.0) break;
      const double h1 = 1e-6 * std::max(1.0, std::abs(s));
      CHECK(g.deriv(s) == doctest::Approx(fd_first(g, s, h1)).epsilon(1e-6));
      CHECK(g.second_deriv(s) == doctest::Approx(fd_second(g, s, h1)).epsilon(1e-5));
    }
  }
}

TEST_CASE("derivatives obey the bound constants; concavity") {
  for (const auto& g : all_fns()) {
    CAPTURE(g.name());
    CAPTURE(g.r());
    const auto b = g.bound_constants();
    for (int i = 0; i <= 1000; ++i) {
      const double s = static_cast<double>(i) / 1000.0;
      CHECK(std::abs(g.deriv(s)) <= b.m_gprime * (1.0 + 1e-12));
      CHECK(std::abs(g.second_deriv(s)) <= b.m_gdprime * (1.0 + 1e-12) + 1e-15);
      if (g.family() != drmpg::DistortionFamily::Identity && s > 0.0 && s < 1.0)
        CHECK(g.second_deriv(s) <= 0.0);
    }
  }
}

TEST_CASE("name round trip") {
  for (const auto& g : all_fns()) {
    const auto back = DistortionFn::from_name(g.name(), g.r() > 0 ? g.r() : 1.0);
    CHECK(back.family() == g.family());
  }
  CHECK_THROWS_AS(DistortionFn::from_name("var", 0.5), std::invalid_argument);
}

TEST_SUITE_END();
