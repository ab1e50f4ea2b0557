#include "rotobh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rotobh/error.hpp"
#include "rotobh/landau.hpp"
#include "rotobh/numeric.hpp"

namespace rotobh::oracle {

namespace {

constexpr int kScanPoints = 64;
constexpr double kTruncationWeight = 1e-8;
constexpr double kOrderThreshold = 1e-5;
constexpr double kBoundaryTolerance = 1e-9;

// Gradient of e0 divided by 4 D.
double stationarity_gap(const MeanFieldProblem& problem, double psi) {
  const auto g = ground_energy(problem, psi);
  return psi - annihilation_expectation(g.vector);
}

}  // namespace

MeanFieldProblem MeanFieldProblem::make(double mu_over_U, double D_eff, int n_max,
                                        double psi_max) {
  MeanFieldProblem p;
  p.mu_over_U = mu_over_U;
  p.D_eff = D_eff;
  p.n_max = n_max > 0 ? n_max : landau::lobe_index(mu_over_U) + 8;
  p.psi_max = psi_max > 0.0 ? psi_max : std::sqrt(std::max(mu_over_U + 2.0, 0.0)) + 1.0;
  return p;
}

void MeanFieldProblem::validate() const {
  if (!std::isfinite(mu_over_U) || !std::isfinite(D_eff) || !std::isfinite(psi_max)) {
    throw Error(ErrorCode::domain, "mean-field problem fields must be finite");
  }
  if (n_max < 4) throw Error(ErrorCode::domain, "Fock truncation n_max must be >= 4");
  if (psi_max <= 0.0) throw Error(ErrorCode::domain, "psi_max must be positive");
  if (D_eff < 0.0) throw Error(ErrorCode::domain, "effective hopping must be >= 0");
}

linalg::SymTridiagonal build_hamiltonian(const MeanFieldProblem& problem, double psi) {
  const int dim = problem.n_max + 1;
  const double mu = problem.mu_over_U;
  const double D = problem.D_eff;
  linalg::SymTridiagonal h;
  h.diag.resize(dim);
  h.off.resize(dim - 1);
  for (int k = 0; k < dim; ++k) {
    h.diag[k] = -mu * k + static_cast<double>(k) * (k - 1) + 2.0 * D * psi * psi;
  }
  for (int k = 0; k + 1 < dim; ++k) {
    h.off[k] = -2.0 * D * psi * std::sqrt(static_cast<double>(k + 1));
  }
  return h;
}

GroundState ground_energy(const MeanFieldProblem& problem, double psi) {
  auto pair = linalg::lowest_eigenpair(build_hamiltonian(problem, psi));
  return {pair.value, std::move(pair.vector), pair.residual, pair.iterations};
}

double annihilation_expectation(std::span<const double> v) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    s += std::sqrt(static_cast<double>(k + 1)) * v[k] * v[k + 1];
  }
  return s;
}

OracleResult minimize_order_parameter(const MeanFieldProblem& problem) {
  problem.validate();
  const auto energy = [&](double psi) { return ground_energy(problem, psi).e0; };
  const auto gap = [&](double psi) { return stationarity_gap(problem, psi); };

  double psi_star = 0.0;
  bool bracketed = true;
  if (problem.D_eff > 0.0) {
    const double step = problem.psi_max / (kScanPoints - 1);
    int best = 0;
    double best_e = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPoints; ++i) {
      const double e = energy(i * step);
      if (e < best_e) {
        best_e = e;
        best = i;
      }
    }
    double lo = std::max(best - 1, 0) * step;
    const double hi = std::min(best + 1, kScanPoints - 1) * step;
    bool mott_side = false;
    if (lo == 0.0) {
      // psi = 0 is the minimum iff the energy rises away from it.
      lo = std::min(1e-7, 0.5 * step);
      mott_side = best == 0 && gap(lo) >= 0.0;
    }
    if (!mott_side) {
      if (gap(lo) < 0.0 && gap(hi) > 0.0) {
        psi_star = numeric::bisect(gap, lo, hi, 0.0);
      } else {
        bracketed = false;
        psi_star = numeric::golden_section(energy, lo, hi, 1e-8).x;
      }
    }
  }

  const auto ground = ground_energy(problem, psi_star);
  OracleResult r;
  r.psi_star = psi_star;
  r.e0 = ground.e0;
  r.a_expect = annihilation_expectation(ground.vector);
  r.residual = ground.residual;
  r.top_weight = ground.vector.back() * ground.vector.back();
  r.truncation_warning = r.top_weight > kTruncationWeight;
  r.converged = bracketed && (problem.D_eff == 0.0 || std::abs(r.psi_star - r.a_expect) <= 1e-6);
  return r;
}

NumericBoundary boundary_numeric(double mu_over_U, int n_max) {
  const int lobe = landau::lobe_index(mu_over_U);
  landau::require_inside_lobe(mu_over_U, lobe);

  bool truncated = false;
  const auto ordered = [&](double D) {
    const auto r = minimize_order_parameter(MeanFieldProblem::make(mu_over_U, D, n_max));
    truncated = truncated || r.truncation_warning;
    return r.psi_star > kOrderThreshold;
  };

  double lo = 0.0;
  double hi = 0.01;
  while (!ordered(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 100.0) {
      std::ostringstream os;
      os << "no superfluid found below D = 100 at mu/U = " << mu_over_U;
      throw Error(ErrorCode::convergence, os.str());
    }
  }
  while (hi - lo > kBoundaryTolerance) {
    const double mid = 0.5 * (lo + hi);
    (ordered(mid) ? hi : lo) = mid;
  }
  return {hi, truncated};
}

}  // namespace rotobh::oracle
