#pragma once

// Ring geometry, rotation, and the dimensionless Bose-Hubbard couplings.
//
// A ring of N sites with radius R rotating at angular velocity Omega picks up
// a site-independent Peierls phase theta = gamma * Omega on every bond, with
// gamma = 2 pi m R^2 / (N hbar). Hopping enters the mean-field physics only
// through the effective hopping t/U * cos(theta).

namespace rotobh {

/// Reduced Planck constant, J s (CODATA 2018).
inline constexpr double kHbar = 1.054571817e-34;

/// Unified atomic mass unit, kg.
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;

struct RingFrame {
  double mass = 0.0;    // kg
  double radius = 0.0;  // m
  int sites = 0;
  double omega = 0.0;  // rad/s, signed

  // Throws Error(domain) unless mass > 0, radius > 0, sites >= 3, all finite.
  void validate() const;
};

struct ModelParams {
  double t_over_U = 0.0;
  double mu_over_U = 0.0;

  void validate() const;
};

/// gamma = 2 pi m R^2 / (N hbar), in seconds.
double scale_factor(const RingFrame& frame);

/// theta = gamma * omega.
double peierls_phase(double gamma, double omega);

/// D = t/U * cos(theta).
double effective_hopping(const ModelParams& params, double theta);

}  // namespace rotobh
