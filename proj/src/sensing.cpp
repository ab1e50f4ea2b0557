#include "rotobh/sensing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "rotobh/error.hpp"
#include "rotobh/numeric.hpp"

namespace rotobh::sensing {

namespace {

constexpr double kFitWarningRms = 0.02;
constexpr int kFitScanPoints = 121;

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 0.5 * std::numbers::pi)) {
    std::ostringstream os;
    os << "theta = " << theta << " must lie in (0, pi/2)";
    throw Error(ErrorCode::domain, os.str());
  }
}

double profile_value(double u) { return u * std::sqrt(std::max(0.0, 1.0 - u)); }

// Smallest x in [0, hi] with f(x) = target, f increasing on [0, hi].
template <typename F>
double rising_root(F&& f, double target, double hi) {
  return numeric::bisect([&](double x) { return f(x) - target; }, 0.0, hi, 0.0);
}

double fit_peak_branch(double a, double theta) {
  const double s = std::sqrt(a * theta);
  return s * std::exp(-s);
}

}  // namespace

std::string_view to_string(Mode m) noexcept { return m == Mode::exact ? "exact" : "fit"; }

Mode mode_from_string(std::string_view name) {
  if (name == "exact") return Mode::exact;
  if (name == "fit") return Mode::fit;
  throw Error(ErrorCode::config, "unknown mode '" + std::string(name) + "'");
}

Exponent exponent_from_string(std::string_view name) {
  if (name == "dimensional") return Exponent::dimensional;
  if (name == "printed") return Exponent::printed;
  throw Error(ErrorCode::config, "unknown exponent '" + std::string(name) + "'");
}

double delta_exact(double theta, double dtheta) {
  require_theta(theta);
  if (!(dtheta >= 0.0 && dtheta <= theta)) {
    std::ostringstream os;
    os << "dtheta = " << dtheta << " must lie in [0, theta = " << theta << "]";
    throw Error(ErrorCode::domain, os.str());
  }
  return profile_value(std::cos(theta) / std::cos(theta - dtheta));
}

double theta_m_exact() { return std::acos(2.0 / 3.0); }

double delta_peak_location(double theta) {
  require_theta(theta);
  const double c = 1.5 * std::cos(theta);
  if (c > 1.0) return theta;
  return theta - std::acos(c);
}

double delta_change(double mu, int n, double theta, double dtheta,
                    landau::A2Variant variant) {
  return landau::kappa(mu, n, variant) * delta_exact(theta, dtheta);
}

double delta_fit(double a, double dtheta) {
  const double s = std::sqrt(a * dtheta);
  return s * std::exp(-s);
}

FitResult fit_a(double theta, int grid_points) {
  require_theta(theta);
  if (grid_points < 50) {
    throw Error(ErrorCode::config, "fit grid needs at least 50 points");
  }
  std::vector<double> xs(grid_points);
  std::vector<double> ys(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    xs[i] = i + 1 == grid_points ? theta : theta * i / (grid_points - 1);
    ys[i] = delta_exact(theta, xs[i]);
  }
  const auto sum_squares = [&](double log_a) {
    const double a = std::exp(log_a);
    double s = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      const double r = delta_fit(a, xs[i]) - ys[i];
      s += r * r;
    }
    return s;
  };
  const auto best = numeric::scan_then_golden(sum_squares, std::log(1e-3), std::log(1e3),
                                              kFitScanPoints, 1e-12);
  FitResult fit;
  fit.a = std::exp(best.x);
  fit.grid_points = grid_points;
  fit.residual_rms = std::sqrt(best.value / grid_points);
  for (int i = 0; i < grid_points; ++i) {
    fit.max_abs_error = std::max(fit.max_abs_error, std::abs(delta_fit(fit.a, xs[i]) - ys[i]));
  }
  fit.quality_warning = fit.residual_rms > kFitWarningRms;
  return fit;
}

double theta_m_fit(int grid_points) {
  const auto excess = [grid_points](double theta) {
    return fit_a(theta, grid_points).a * theta - 1.0;
  };
  return numeric::bisect(excess, 0.3, 1.2, 1e-12);
}

double delta_max(double theta, Mode mode, int grid_points) {
  require_theta(theta);
  if (mode == Mode::exact) {
    if (theta >= theta_m_exact()) return 2.0 / (3.0 * std::sqrt(3.0));
    return delta_exact(theta, theta);
  }
  const double a = fit_a(theta, grid_points).a;
  if (a * theta >= 1.0) return std::exp(-1.0);
  return fit_peak_branch(a, theta);
}

Resolution resolution(double theta, Mode mode, const ResolutionOptions& options) {
  require_theta(theta);
  if (options.gamma && !(*options.gamma > 0.0 && std::isfinite(*options.gamma))) {
    throw Error(ErrorCode::domain, "gamma must be positive and finite");
  }
  Resolution r;
  r.theta = theta;
  r.mode = mode;
  r.a_fit = fit_a(theta, options.grid_points).a;

  if (mode == Mode::exact) {
    r.delta_max = delta_max(theta, Mode::exact);
    const double half = 0.5 * r.delta_max;
    const double peak = delta_peak_location(theta);
    const auto profile = [theta](double x) { return delta_exact(theta, x); };
    r.epsilon_theta = rising_root(profile, half, peak);
    if (delta_exact(theta, theta) <= half) {
      const double right = numeric::bisect([&](double x) { return half - profile(x); }, peak,
                                           theta, 0.0);
      r.full_width = right - r.epsilon_theta;
    }
  } else {
    const double a = r.a_fit;
    const bool peak_inside = a * theta >= 1.0;
    r.delta_max = peak_inside ? std::exp(-1.0) : fit_peak_branch(a, theta);
    const double w = lambert_w(LambertBranch::principal, -0.5 * r.delta_max);
    const double scale = options.exponent == Exponent::dimensional ? a : a * a;
    r.epsilon_theta = w * w / scale;
  }
  if (options.gamma) r.epsilon_omega = r.epsilon_theta / *options.gamma;
  return r;
}

Inversion invert_rotation_change(double measured, double mu, int n, double theta,
                                 double gamma, landau::A2Variant variant) {
  require_theta(theta);
  if (!(gamma > 0.0 && std::isfinite(gamma))) {
    throw Error(ErrorCode::domain, "gamma must be positive and finite");
  }
  const double k = landau::kappa(mu, n, variant);
  const double ceiling = k * delta_max(theta, Mode::exact);
  if (!(measured >= 0.0) || measured > ceiling) {
    std::ostringstream os;
    os << "measured change " << measured << " outside [0, " << ceiling << "]";
    throw Error(ErrorCode::out_of_range, os.str());
  }
  const double target = measured / k;
  const double peak = delta_peak_location(theta);
  const auto profile = [theta](double x) { return delta_exact(theta, x); };

  Inversion inv;
  inv.delta_theta = measured == 0.0 ? 0.0 : rising_root(profile, target, peak);
  inv.delta_omega = inv.delta_theta / gamma;
  if (peak < theta && measured > 0.0 && delta_exact(theta, theta) <= target &&
      target < delta_max(theta, Mode::exact)) {
    inv.ambiguous = true;
    inv.second_delta_theta =
        numeric::bisect([&](double x) { return target - profile(x); }, peak, theta, 0.0);
  }
  return inv;
}

SensingProfile make_profile(double mu, double theta, Mode mode, int samples,
                            const ResolutionOptions& options, landau::A2Variant variant) {
  require_theta(theta);
  if (samples < 2) throw Error(ErrorCode::config, "profile needs at least 2 samples");
  SensingProfile p;
  p.theta = theta;
  p.kappa = landau::kappa(mu, landau::lobe_index(mu), variant);
  p.delta_theta.resize(samples);
  p.delta.resize(samples);
  for (int i = 0; i < samples; ++i) {
    p.delta_theta[i] = i + 1 == samples ? theta : theta * i / (samples - 1);
    p.delta[i] = delta_exact(theta, p.delta_theta[i]);
  }
  p.fit = fit_a(theta, options.grid_points);
  p.resolution = resolution(theta, mode, options);
  return p;
}

}  // namespace rotobh::sensing
