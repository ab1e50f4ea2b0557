#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "rotobh/error.hpp"
#include "rotobh/landau.hpp"
#include "rotobh/sensing.hpp"

using namespace rotobh;
using namespace rotobh::sensing;

namespace {

const double kPeak = 2.0 / (3.0 * std::sqrt(3.0));

// Left half-maximum crossing of delta_exact from a dense scan plus linear
// interpolation; independent of the library's bisection.
double scanned_resolution(double theta) {
  const int n = 400000;
  double best = 0.0;
  for (int i = 0; i <= n; ++i) best = std::max(best, delta_exact(theta, theta * i / n));
  const double half = 0.5 * best;
  double prev = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double x = theta * i / n;
    const double v = delta_exact(theta, x);
    if (v >= half) {
      const double x0 = theta * (i - 1) / n;
      return x0 + (x - x0) * (half - prev) / (v - prev);
    }
    prev = v;
  }
  return theta;
}

}  // namespace

TEST_CASE("exact profile values") {
  CHECK(delta_exact(0.5, 0.0) == 0.0);
  CHECK(delta_exact(0.5, 0.1) == doctest::Approx(0.207011).epsilon(1e-5));
  CHECK(delta_exact(0.5, 0.1) == doctest::Approx(0.2070104817540616).epsilon(1e-13));
  for (double theta : {std::acos(2.0 / 3.0) + 1e-12, 0.9, 1.2, 1.5}) {
    const double x = theta - std::acos(1.5 * std::cos(theta));
    CHECK(delta_exact(theta, x) == doctest::Approx(kPeak).epsilon(1e-12));
    CHECK(delta_peak_location(theta) == doctest::Approx(x));
  }
  CHECK(delta_peak_location(0.6) == 0.6);
}

TEST_CASE("exact profile domain") {
  CHECK_THROWS_AS(delta_exact(0.5, 0.6), Error);
  CHECK_THROWS_AS(delta_exact(0.5, -0.01), Error);
  CHECK_THROWS_AS(delta_exact(0.0, 0.0), Error);
  CHECK_THROWS_AS(delta_exact(std::numbers::pi / 2, 0.1), Error);
}

TEST_CASE("profile rises to a single maximum") {
  for (double theta : {0.3, 0.6, 0.9, 1.2}) {
    const double peak = delta_peak_location(theta);
    const int n = 20000;
    double prev = -1.0;
    double best = 0.0;
    double best_x = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = theta * i / n;
      const double v = delta_exact(theta, x);
      if (x < peak - 1e-12) {
        CHECK(v > prev);
      } else if (x > peak + theta / n) {
        CHECK(v < prev);
      }
      if (v > best) {
        best = v;
        best_x = x;
      }
      prev = v;
    }
    CHECK(std::abs(best_x - peak) <= theta / n);
    CHECK(best == doctest::Approx(delta_max(theta, Mode::exact)).epsilon(1e-8));
  }
}

TEST_CASE("on-boundary change") {
  const double d = delta_change(1.0, 1, 0.5, 0.1, landau::A2Variant::consistent);
  CHECK(d == doctest::Approx(0.13887).epsilon(1e-4));
  CHECK(delta_change(1.0, 1, 0.5, 0.0, landau::A2Variant::consistent) == 0.0);
  CHECK(delta_change(1.0, 1, 0.5, 0.1, landau::A2Variant::variational) ==
        doctest::Approx(2.0 * d).epsilon(1e-14));
}

TEST_CASE("fit of the exponential form") {
  // Least-squares value from an independent bounded scalar minimizer on the
  // same 200-point grid.
  const auto fit = fit_a(1.0);
  CHECK(fit.a == doctest::Approx(2.154801).epsilon(1e-5));
  CHECK(fit.residual_rms == doctest::Approx(0.0190915).epsilon(1e-4));
  CHECK(fit.residual_rms <= 0.02);
  CHECK_FALSE(fit.quality_warning);
  CHECK(delta_fit(fit.a, 1.0 / fit.a) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(delta_fit(fit.a, 0.0) == 0.0);
  CHECK_THROWS_AS(fit_a(1.0, 10), Error);
}

TEST_CASE("fit is a true least-squares minimum") {
  for (double theta : {0.5, 0.8, 1.1}) {
    const auto fit = fit_a(theta);
    const auto sse = [&](double a) {
      double s = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double x = theta * i / 199;
        const double r = delta_fit(a, x) - delta_exact(theta, std::min(x, theta));
        s += r * r;
      }
      return s;
    };
    const double at = sse(fit.a);
    for (int k = -200; k <= 200; ++k) {
      CHECK(at <= sse(fit.a * std::exp(k * 1e-3)) + 1e-15);
    }
  }
}

TEST_CASE("fit quality across the operating window") {
  double worst_rms = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double theta = 0.5 + 0.6 * i / 60;
    worst_rms = std::max(worst_rms, fit_a(theta).residual_rms);
  }
  CHECK(worst_rms <= 0.02);
  // Pointwise deviation stays under 0.03 up to theta = 0.9, then peaks near
  // 0.0302 at 0.92 and 0.0312 at the window end.
  double worst_abs = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double theta = 0.5 + 0.6 * i / 60;
    const double e = fit_a(theta).max_abs_error;
    if (theta <= 0.9 + 1e-12) CHECK(e <= 0.03);
    worst_abs = std::max(worst_abs, e);
  }
  CHECK(worst_abs <= 0.032);
  CHECK(fit_a(0.92).max_abs_error > 0.03);
  CHECK(fit_a(1.1).max_abs_error == doctest::Approx(0.031171).epsilon(1e-3));
}

TEST_CASE("peak values") {
  CHECK(std::abs(delta_max(1.0, Mode::fit) - std::exp(-1.0)) <= 1e-15);
  CHECK(delta_max(1.0, Mode::exact) == doctest::Approx(kPeak).epsilon(1e-15));
  CHECK(delta_max(0.6, Mode::exact) == doctest::Approx(0.344931).epsilon(1e-4));
  CHECK(delta_max(0.6, Mode::exact) == delta_exact(0.6, 0.6));
  CHECK(theta_m_exact() == doctest::Approx(0.8410686705679303).epsilon(1e-14));
  // Below the fitted threshold the fit peak lies outside the window.
  const double a = fit_a(0.5).a;
  CHECK(a * 0.5 < 1.0);
  CHECK(delta_max(0.5, Mode::fit) == doctest::Approx(std::sqrt(a * 0.5) * std::exp(-std::sqrt(a * 0.5))));
}

TEST_CASE("fitted threshold") {
  const double tm = theta_m_fit();
  CHECK(tm == doctest::Approx(0.7091798).epsilon(1e-5));
  CHECK(std::abs(fit_a(tm).a * tm - 1.0) <= 1e-6);
}

TEST_CASE("exact resolution") {
  const auto r1 = resolution(1.0, Mode::exact);
  CHECK(std::abs(r1.epsilon_theta - 0.0271) <= 5e-4);
  CHECK(r1.epsilon_theta == doctest::Approx(0.027136389042850477).epsilon(1e-9));
  CHECK(std::abs(resolution(0.6, Mode::exact).epsilon_theta - 0.0497) <= 5e-4);
  for (double theta : {0.35, 0.6, 0.95, 1.3}) {
    CHECK(resolution(theta, Mode::exact).epsilon_theta ==
          doctest::Approx(scanned_resolution(theta)).epsilon(1e-6));
  }
  // The profile only falls back below half maximum inside the window once
  // cos(theta) sqrt(1 - cos(theta)) < 1/(3 sqrt 3).
  CHECK_FALSE(r1.full_width.has_value());
  CHECK_FALSE(resolution(0.6, Mode::exact).full_width.has_value());
  const auto wide = resolution(1.4, Mode::exact);
  REQUIRE(wide.full_width.has_value());
  const double right = wide.epsilon_theta + *wide.full_width;
  CHECK(right < 1.4);
  CHECK(delta_exact(1.4, right) == doctest::Approx(0.5 * kPeak).epsilon(1e-9));
}

TEST_CASE("exact resolution improves with rotation past theta = 0.6") {
  double prev = resolution(0.6, Mode::exact).epsilon_theta;
  for (double theta : {0.7, 0.8, 0.9, 1.0, 1.1, 1.2}) {
    const double e = resolution(theta, Mode::exact).epsilon_theta;
    CHECK(e < prev);
    prev = e;
  }
  // Below 0.6 the half-maximum is set by the window edge and the width grows
  // with theta instead.
  CHECK(resolution(0.3, Mode::exact).epsilon_theta < resolution(0.6, Mode::exact).epsilon_theta);
}

TEST_CASE("fit resolution") {
  const double w2 = 0.05380588371042124;
  for (double theta : {0.9, 1.0, 1.2}) {
    const auto r = resolution(theta, Mode::fit);
    CHECK(std::abs(r.epsilon_theta * r.a_fit - w2) <= 1e-8);
    CHECK(std::abs(r.delta_max - std::exp(-1.0)) <= 1e-15);
  }
  const auto low = resolution(0.5, Mode::fit);
  const double s = std::sqrt(low.a_fit * 0.5);
  const double w = lambert_w(LambertBranch::principal, -0.5 * s * std::exp(-s));
  CHECK(low.epsilon_theta == doctest::Approx(w * w / low.a_fit).epsilon(1e-14));
  // Fitted curve reaches half its maximum at the reported resolution.
  CHECK(delta_fit(low.a_fit, low.epsilon_theta) == doctest::Approx(0.5 * low.delta_max).epsilon(1e-12));

  ResolutionOptions printed;
  printed.exponent = Exponent::printed;
  const auto p = resolution(1.0, Mode::fit, printed);
  const auto d = resolution(1.0, Mode::fit);
  CHECK(p.epsilon_theta == doctest::Approx(d.epsilon_theta / d.a_fit).epsilon(1e-14));
}

TEST_CASE("resolution in rotation units") {
  ResolutionOptions o;
  o.gamma = 0.04303700711724585;
  const auto r = resolution(1.0, Mode::exact, o);
  REQUIRE(r.epsilon_omega.has_value());
  CHECK(*r.epsilon_omega == r.epsilon_theta / *o.gamma);
  o.gamma = -1.0;
  CHECK_THROWS_AS(resolution(1.0, Mode::exact, o), Error);
}

TEST_CASE("resolution does not depend on the lattice parameters") {
  for (auto mode : {Mode::exact, Mode::fit}) {
    const auto ref = make_profile(1.0, 0.9, mode, 64);
    for (double mu : {0.6, 1.4, 2.5, -0.7}) {
      const auto p = make_profile(mu, 0.9, mode, 64);
      CHECK(std::bit_cast<std::uint64_t>(p.resolution.epsilon_theta) ==
            std::bit_cast<std::uint64_t>(ref.resolution.epsilon_theta));
      CHECK(p.kappa != ref.kappa);
    }
  }
}

TEST_CASE("inversion") {
  const auto zero = invert_rotation_change(0.0, 1.0, 1, 0.5, 1.0, landau::A2Variant::consistent);
  CHECK(zero.delta_omega == 0.0);
  const double measured = delta_change(1.0, 1, 0.5, 0.1, landau::A2Variant::consistent);
  const auto inv = invert_rotation_change(measured, 1.0, 1, 0.5, 1.0, landau::A2Variant::consistent);
  CHECK(std::abs(inv.delta_omega - 0.1) <= 1e-4);
  CHECK_FALSE(inv.ambiguous);
  const auto half_gamma =
      invert_rotation_change(measured, 1.0, 1, 0.5, 0.5, landau::A2Variant::consistent);
  CHECK(half_gamma.delta_omega == doctest::Approx(0.2).epsilon(1e-8));

  try {
    invert_rotation_change(1.0, 1.0, 1, 0.5, 1.0, landau::A2Variant::consistent);
    FAIL("expected out_of_range");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_range);
  }
}

TEST_CASE("inversion flags a second root past the peak") {
  const double theta = 1.2;
  const double k = landau::kappa(1.0, 1, landau::A2Variant::consistent);
  const double edge = delta_exact(theta, theta);
  const double target = 0.5 * (edge + kPeak);
  const auto inv =
      invert_rotation_change(k * target, 1.0, 1, theta, 1.0, landau::A2Variant::consistent);
  CHECK(inv.ambiguous);
  REQUIRE(inv.second_delta_theta.has_value());
  CHECK(*inv.second_delta_theta > delta_peak_location(theta));
  CHECK(delta_exact(theta, *inv.second_delta_theta) == doctest::Approx(target).epsilon(1e-10));
}

TEST_CASE("inversion round trip on the rising branch") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mu_dist(0.05, 1.95);
  std::uniform_real_distribution<double> theta_dist(0.1, 1.45);
  std::uniform_real_distribution<double> frac(0.01, 0.9);
  for (int i = 0; i < 300; ++i) {
    const double mu = mu_dist(rng), theta = theta_dist(rng);
    const double dtheta = frac(rng) * delta_peak_location(theta);
    const double gamma = 0.043;
    const double measured = delta_change(mu, 1, theta, dtheta, landau::A2Variant::consistent);
    const auto inv =
        invert_rotation_change(measured, mu, 1, theta, gamma, landau::A2Variant::consistent);
    const double domega = dtheta / gamma;
    CHECK(std::abs(inv.delta_omega - domega) <= 1e-8 * domega);
  }
}
