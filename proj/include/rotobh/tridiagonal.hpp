#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rotobh::linalg {

// Real symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
  double norm_inf() const noexcept;
  std::vector<double> multiply(std::span<const double> x) const;
};

/// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
int sturm_count(const SymTridiagonal& m, double x);

/// Smallest eigenvalue by Sturm bisection, to within a few ulps of norm_inf.
double lowest_eigenvalue(const SymTridiagonal& m);

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm, largest component positive
  double residual = 0.0;       // ||M v - value v||_2
  int iterations = 0;          // inverse-iteration sweeps used
};

// Lowest eigenpair: Sturm bisection for the value, inverse iteration with a
// pivoted tridiagonal LU for the vector. Throws Error(convergence) when the
// residual stays above 1e-10 * max(1, ||M||) after the iteration cap.
EigenPair lowest_eigenpair(const SymTridiagonal& m);

}  // namespace rotobh::linalg
