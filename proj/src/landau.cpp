#include "rotobh/landau.hpp"

#include <cmath>
#include <sstream>

#include "rotobh/error.hpp"

namespace rotobh::landau {

namespace {

double level(int k, double mu) { return -mu * k + static_cast<double>(k) * (k - 1); }

void require_moment_variant(A2Variant variant) {
  if (variant == A2Variant::literal) {
    throw Error(ErrorCode::domain,
                "the literal a2 never vanishes; use the consistent or variational form");
  }
}

// Boundary hopping -1/chi of the consistent form.
double consistent_boundary(double mu, int n) { return -1.0 / susceptibility(mu, n); }

}  // namespace

int lobe_index(double mu) {
  if (!std::isfinite(mu)) throw Error(ErrorCode::domain, "mu/U must be finite");
  if (mu < 0.0) return 0;
  return static_cast<int>(std::floor(mu / 2.0)) + 1;
}

double energy_gap(int n, int m, double mu) { return level(n, mu) - level(m, mu); }

void require_inside_lobe(double mu, int n) {
  if (n < 0) throw Error(ErrorCode::domain, "lobe index must be non-negative");
  if (!std::isfinite(mu)) throw Error(ErrorCode::domain, "mu/U must be finite");
  const double upper = 2.0 * n;
  const double lower = 2.0 * (n - 1);
  if (mu == upper || (n >= 1 && mu == lower)) {
    std::ostringstream os;
    os << "mu/U = " << mu << " sits on a corner of lobe " << n;
    throw Error(ErrorCode::degenerate_gap, os.str());
  }
  const bool inside = n == 0 ? mu < 0.0 : (mu > lower && mu < upper);
  if (!inside) {
    std::ostringstream os;
    os << "mu/U = " << mu << " lies outside lobe " << n;
    throw Error(ErrorCode::domain, os.str());
  }
}

double susceptibility(double mu, int n) {
  require_inside_lobe(mu, n);
  double chi = (n + 1) / energy_gap(n, n + 1, mu);
  if (n > 0) chi += n / energy_gap(n, n - 1, mu);
  return chi;
}

double a2(double D, double mu, int n, A2Variant variant) {
  const double chi = susceptibility(mu, n);
  switch (variant) {
    case A2Variant::literal:
      return 4.0 * D * D * chi;
    case A2Variant::consistent:
      return 4.0 * D * (1.0 + D * chi);
    case A2Variant::variational:
      return 2.0 * D * (1.0 + 2.0 * D * chi);
  }
  return 0.0;
}

double a4_bracket(double mu, int n) {
  require_inside_lobe(mu, n);
  const double up1 = energy_gap(n, n + 1, mu);
  const double up2 = energy_gap(n, n + 2, mu);
  const double np1 = n + 1.0;
  double b = np1 * (n + 2.0) / (up1 * up1 * up2) - np1 * np1 / (up1 * up1 * up1);
  if (n >= 1) {
    const double dn1 = energy_gap(n, n - 1, mu);
    b += -static_cast<double>(n) * n / (dn1 * dn1 * dn1) - n * np1 / (up1 * dn1 * dn1) -
         n * np1 / (up1 * up1 * dn1);
  }
  if (n >= 2) {
    const double dn1 = energy_gap(n, n - 1, mu);
    const double dn2 = energy_gap(n, n - 2, mu);
    b += n * (n - 1.0) / (dn1 * dn1 * dn2);
  }
  return b;
}

double a4(double D, double mu, int n) {
  const double d2 = D * D;
  return 16.0 * d2 * d2 * a4_bracket(mu, n);
}

LandauCoefficients coefficients(double D, double mu, int n) {
  LandauCoefficients c;
  c.lobe_n = n;
  c.a2_literal = a2(D, mu, n, A2Variant::literal);
  c.a2_consistent = a2(D, mu, n, A2Variant::consistent);
  c.bracket_B = a4_bracket(mu, n);
  c.a4 = a4(D, mu, n);
  c.valid = c.a4 > 0.0 && std::isfinite(c.a4) && std::isfinite(c.a2_consistent);
  return c;
}

double order_parameter_landau(double D, double mu, int n, A2Variant variant) {
  require_moment_variant(variant);
  const double quad = a2(D, mu, n, variant);
  if (quad >= 0.0) return 0.0;
  const double quart = a4(D, mu, n);
  if (!(quart > 0.0)) {
    std::ostringstream os;
    os << "a4 = " << quart << " is not positive at mu/U = " << mu << ", n = " << n;
    throw Error(ErrorCode::invalid_expansion, os.str());
  }
  return std::sqrt(-quad / (2.0 * quart));
}

double kappa(double mu, int n, A2Variant variant) {
  require_moment_variant(variant);
  const double b = a4_bracket(mu, n);
  if (!(b > 0.0)) {
    std::ostringstream os;
    os << "fourth-order bracket " << b << " is not positive at mu/U = " << mu;
    throw Error(ErrorCode::invalid_expansion, os.str());
  }
  const double dc = consistent_boundary(mu, n);
  if (variant == A2Variant::consistent) return 1.0 / std::sqrt(8.0 * dc * dc * dc * b);
  const double dcv = 0.5 * dc;
  return 1.0 / std::sqrt(16.0 * dcv * dcv * dcv * b);
}

}  // namespace rotobh::landau
