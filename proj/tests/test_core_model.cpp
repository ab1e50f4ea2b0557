#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rotobh/core_model.hpp"
#include "rotobh/error.hpp"

using namespace rotobh;

namespace {

RingFrame rubidium_ring() { return {87 * kAtomicMassUnit, 1e-5, 20, 0.0}; }

}  // namespace

TEST_CASE("scale factor of a rubidium ring") {
  // 2 pi m R^2 / (N hbar) evaluated independently in double precision.
  CHECK(scale_factor(rubidium_ring()) == doctest::Approx(4.303700711724585e-2).epsilon(1e-12));
  CHECK(scale_factor(rubidium_ring()) == doctest::Approx(4.304e-2).epsilon(1e-3));
}

TEST_CASE("scale factor scaling laws") {
  const auto base = rubidium_ring();
  auto doubled_sites = base;
  doubled_sites.sites *= 2;
  auto doubled_radius = base;
  doubled_radius.radius *= 2;
  const double g = scale_factor(base);
  CHECK(std::abs(scale_factor(doubled_sites) / g - 0.5) <= 1e-12);
  CHECK(std::abs(scale_factor(doubled_radius) / g - 4.0) <= 1e-12);
}

TEST_CASE("ring frame validation") {
  auto f = rubidium_ring();
  f.sites = 2;
  CHECK_THROWS_AS(scale_factor(f), Error);
  f = rubidium_ring();
  f.mass = 0.0;
  CHECK_THROWS_AS(f.validate(), Error);
  f = rubidium_ring();
  f.radius = -1.0;
  CHECK_THROWS_AS(f.validate(), Error);
  f = rubidium_ring();
  f.omega = std::nan("");
  CHECK_THROWS_AS(f.validate(), Error);
  try {
    f.validate();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("Peierls phase") {
  CHECK(peierls_phase(0.04304, 0.0) == 0.0);
  CHECK(peierls_phase(1.0, 0.8603) == doctest::Approx(0.8603));
  CHECK(peierls_phase(0.04304, 10.0) == doctest::Approx(0.4304).epsilon(1e-12));
  CHECK(peierls_phase(0.04304, -10.0) < 0.0);
}

TEST_CASE("Peierls phase is linear in omega") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  const double g = scale_factor(rubidium_ring());
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng), w1 = u(rng), w2 = u(rng);
    const double lhs = peierls_phase(g, a * w1 + b * w2);
    const double rhs = a * peierls_phase(g, w1) + b * peierls_phase(g, w2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("effective hopping") {
  const ModelParams p{0.4, 1.0};
  CHECK(effective_hopping(p, 0.0) == 0.4);
  CHECK(std::abs(effective_hopping(p, std::numbers::pi / 2)) < 1e-16);
  CHECK(effective_hopping(p, 0.5) == doctest::Approx(0.351033).epsilon(1e-6));
  CHECK_THROWS_AS(effective_hopping(ModelParams{-0.1, 1.0}, 0.0), Error);
}

TEST_CASE("effective hopping is even and 2 pi periodic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const ModelParams p{0.37, 1.2};
  for (int i = 0; i < 500; ++i) {
    const double th = u(rng);
    const double d = effective_hopping(p, th);
    CHECK(effective_hopping(p, -th) == d);
    CHECK(std::abs(effective_hopping(p, th + 2 * std::numbers::pi) - d) <= 1e-14);
  }
}
