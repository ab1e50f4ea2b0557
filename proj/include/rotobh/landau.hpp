#pragma once

// Landau expansion E = a0 + a2 psi^2 + a4 psi^4 of the single-site mean-field
// ground energy, from fourth-order perturbation theory around the t = 0 Fock
// state |n>. All energies are in units of U with E_n = -mu n + n (n - 1).
//
// The quadratic coefficient comes in three forms:
//   literal      4 D^2 chi            (the hopping-squared term alone)
//   consistent   4 D (1 + D chi)      (vanishes on the closed-form boundary)
//   variational  2 D (1 + 2 D chi)    (exact psi^2 coefficient of the
//                                      one-body mean-field energy)
// with chi = (n+1)/(mu - 2n) + n/(2(n-1) - mu), which is negative inside every
// Mott lobe. The consistent and variational boundaries differ by a factor 2.

namespace rotobh::landau {

enum class A2Variant { literal, consistent, variational };

struct LandauCoefficients {
  double a2_literal = 0.0;
  double a2_consistent = 0.0;
  double a4 = 0.0;
  double bracket_B = 0.0;
  int lobe_n = 0;
  // All gaps nonzero and a4 > 0.
  bool valid = false;
};

/// Lobe containing mu: 0 for mu < 0, else floor(mu / 2) + 1. Corners 2k map
/// to lobe k + 1.
int lobe_index(double mu);

/// E_{n,m} = E_n - E_m with E_k = -mu k + k (k - 1).
double energy_gap(int n, int m, double mu);

// Throws Error(degenerate_gap) at a lobe corner and Error(domain) when mu
// lies outside lobe n. Lobe n >= 1 spans (2(n-1), 2n); lobe 0 is mu < 0.
void require_inside_lobe(double mu, int n);

/// chi = (n+1)/E_{n,n+1} + n/E_{n,n-1}; the n-term is dropped for n = 0.
double susceptibility(double mu, int n);

double a2(double D, double mu, int n, A2Variant variant);

// Six-term fourth-order bracket. Terms carrying a vanishing factor n or
// n (n - 1) are skipped so no gap to a negative occupation is formed.
double a4_bracket(double mu, int n);

/// a4 = 16 D^4 B.
double a4(double D, double mu, int n);

// Collects all coefficients without throwing on a non-positive bracket;
// still throws for corner or out-of-lobe mu.
LandauCoefficients coefficients(double D, double mu, int n);

// psi = sqrt(-a2 / (2 a4)) when a2 < 0, else 0. Only the consistent and
// variational variants are accepted. Throws Error(invalid_expansion) when
// a2 < 0 but a4 <= 0.
double order_parameter_landau(double D, double mu, int n, A2Variant variant);

// Prefactor of the on-boundary factorization psi(D_c / u) = kappa * u sqrt(1 - u):
//   consistent   (8  D_c^3  B)^(-1/2)
//   variational  (16 D_cv^3 B)^(-1/2),  D_cv = D_c / 2
// Independent of t/U and of the rotation.
double kappa(double mu, int n, A2Variant variant);

}  // namespace rotobh::landau
