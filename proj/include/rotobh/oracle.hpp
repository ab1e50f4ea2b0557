#pragma once

// Non-perturbative check of the Landau expansion: the single-site mean-field
// Hamiltonian
//   H(psi) = -mu n + n (n - 1) - 2 D (a^+ psi + psi a - psi^2)
// is diagonalized in the Fock space {0..n_max} and its ground energy is
// minimized over real psi >= 0. At the minimum psi equals <a> in the ground
// state, since de0/dpsi = 4 D (psi - <a>).

#include <span>
#include <vector>

#include "rotobh/tridiagonal.hpp"

namespace rotobh::oracle {

struct MeanFieldProblem {
  double mu_over_U = 0.0;
  double D_eff = 0.0;
  int n_max = 0;
  double psi_max = 0.0;

  // Fills n_max = lobe + 8 and psi_max = sqrt(mu + 2) + 1 when the
  // corresponding argument is not positive.
  static MeanFieldProblem make(double mu_over_U, double D_eff, int n_max = 0,
                               double psi_max = 0.0);

  // Requires n_max >= 4, psi_max > 0, D_eff >= 0, finite mu.
  void validate() const;
};

linalg::SymTridiagonal build_hamiltonian(const MeanFieldProblem& problem, double psi);

struct GroundState {
  double e0 = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  int iterations = 0;
};

GroundState ground_energy(const MeanFieldProblem& problem, double psi);

/// <v| a |v> for a real Fock-space vector.
double annihilation_expectation(std::span<const double> v);

struct OracleResult {
  double psi_star = 0.0;
  double e0 = 0.0;
  double a_expect = 0.0;
  bool converged = false;
  // Ground-state weight on the highest kept occupation exceeds 1e-8.
  bool truncation_warning = false;
  double top_weight = 0.0;
  double residual = 0.0;
};

// 64-point scan of e0 over [0, psi_max] to bracket the global minimum, then
// bisection on the exact gradient sign psi - <a>.
OracleResult minimize_order_parameter(const MeanFieldProblem& problem);

struct NumericBoundary {
  double D_cv = 0.0;
  bool truncation_warning = false;
};

// Smallest D with psi* > 1e-5, by bisection to |dD| <= 1e-9. n_max <= 0
// selects the default truncation.
NumericBoundary boundary_numeric(double mu_over_U, int n_max = 0);

}  // namespace rotobh::oracle
