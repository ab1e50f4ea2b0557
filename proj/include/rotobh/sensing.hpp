#pragma once

// Rotation sensing at the Mott/superfluid edge.
//
// A system parked on the phase boundary at Peierls phase theta, whose rotation
// then drops by dtheta, gains an order parameter
//   Delta = kappa(mu, n) * delta(theta, dtheta),
//   delta = u sqrt(1 - u),  u = cos(theta) / cos(theta - dtheta),
// where only delta depends on the rotation. The sensing resolution is the
// smallest dtheta at which delta reaches half its maximum over
// 0 <= dtheta <= theta.

#include <optional>
#include <string_view>
#include <vector>

#include "rotobh/landau.hpp"
#include "rotobh/lambert_w.hpp"

namespace rotobh::sensing {

/// Value quoted for the rotation beyond which the fitted profile peaks inside
/// the sensing window. Neither the exact profile (arccos(2/3)) nor the fixed
/// fit protocol (theta_m_fit) reproduces it; kept for reporting only.
inline constexpr double kQuotedThetaM = 0.8603;

enum class Mode { exact, fit };

std::string_view to_string(Mode m) noexcept;
Mode mode_from_string(std::string_view name);

// Resolution = W0(.)^2 / a (dimensionally consistent) or W0(.)^2 / a^2 (as
// sometimes printed; retained for comparison only).
enum class Exponent { dimensional, printed };

Exponent exponent_from_string(std::string_view name);

// Requires 0 < theta < pi/2 and 0 <= dtheta <= theta; Error(domain) otherwise.
double delta_exact(double theta, double dtheta);

/// dtheta at which delta_exact peaks: theta - arccos(3/2 cos theta) once
/// theta >= arccos(2/3), else theta (the window edge).
double delta_peak_location(double theta);

/// arccos(2/3): smallest theta whose exact profile peaks inside the window.
double theta_m_exact();

double delta_change(double mu, int n, double theta, double dtheta, landau::A2Variant variant);

/// sqrt(a x) exp(-sqrt(a x)).
double delta_fit(double a, double dtheta);

struct FitResult {
  double a = 0.0;
  double residual_rms = 0.0;
  double max_abs_error = 0.0;
  int grid_points = 0;
  // residual_rms > 0.02
  bool quality_warning = false;
};

// Least squares of delta_fit against delta_exact on a uniform grid of
// `grid_points` (>= 50) over [0, theta]; log-spaced coarse scan of
// a in [1e-3, 1e3] then golden section in log a.
FitResult fit_a(double theta, int grid_points = 200);

/// Root of a(theta) theta = 1: where the fitted peak 1/a enters the window.
double theta_m_fit(int grid_points = 200);

// fit: e^-1 when a(theta) theta >= 1, else sqrt(a theta) exp(-sqrt(a theta)).
// exact: 2/(3 sqrt 3) once theta >= arccos(2/3), else delta(theta, theta).
double delta_max(double theta, Mode mode, int grid_points = 200);

struct Resolution {
  double theta = 0.0;
  Mode mode = Mode::exact;
  double a_fit = 0.0;
  double delta_max = 0.0;
  double epsilon_theta = 0.0;
  std::optional<double> epsilon_omega;  // epsilon_theta / gamma
  // exact mode: right half-max crossing minus left, when the right one exists
  std::optional<double> full_width;
};

struct ResolutionOptions {
  int grid_points = 200;
  Exponent exponent = Exponent::dimensional;
  std::optional<double> gamma;
};

Resolution resolution(double theta, Mode mode, const ResolutionOptions& options = {});

struct Inversion {
  double delta_theta = 0.0;
  double delta_omega = 0.0;
  // The measured change is also reached past the peak.
  bool ambiguous = false;
  std::optional<double> second_delta_theta;
};

// Smallest dtheta with kappa * delta_exact(theta, dtheta) = measured, returned
// with dOmega = dtheta / gamma. Error(out_of_range) when measured exceeds
// kappa * delta_max(theta, exact) or is negative.
Inversion invert_rotation_change(double measured, double mu, int n, double theta,
                                 double gamma, landau::A2Variant variant);

struct SensingProfile {
  double theta = 0.0;
  double kappa = 0.0;
  std::vector<double> delta_theta;
  std::vector<double> delta;
  FitResult fit;
  Resolution resolution;
};

// Samples delta over `samples` uniform points of [0, theta] and attaches the
// fit and resolution. kappa is evaluated at (mu, lobe_index(mu)).
SensingProfile make_profile(double mu, double theta, Mode mode, int samples,
                            const ResolutionOptions& options = {},
                            landau::A2Variant variant = landau::A2Variant::consistent);

}  // namespace rotobh::sensing
