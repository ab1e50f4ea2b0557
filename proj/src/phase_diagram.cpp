#include "rotobh/phase_diagram.hpp"

#include <cmath>
#include <charconv>
#include <limits>
#include <sstream>

#include "rotobh/numeric.hpp"
#include "rotobh/oracle.hpp"

namespace rotobh::phase {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_corner(double mu) {
  return mu >= 0.0 && std::floor(mu / 2.0) * 2.0 == mu;
}

// d(1/D_c)/dmu for the paper convention.
double reciprocal_slope(double mu, int n) {
  const double up = mu - 2.0 * n;
  const double down = mu - 2.0 * (n - 1);
  return (n + 1) / (up * up) - n / (down * down);
}

void require_axis(const std::vector<double>& axis, const char* name, bool monotone = true) {
  if (axis.empty()) {
    throw Error(ErrorCode::config, std::string(name) + " axis is empty");
  }
  for (double v : axis) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::config, std::string(name) + " axis has a non-finite value");
    }
  }
  if (!monotone || axis.size() < 2) return;
  const bool rising = axis[1] > axis[0];
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (rising ? !(axis[i] > axis[i - 1]) : !(axis[i] < axis[i - 1])) {
      throw Error(ErrorCode::config, std::string(name) + " axis is not strictly monotone");
    }
  }
}

double order_parameter(double mu, double D, int n, const SweepSpec& spec) {
  if (spec.psi_method == PsiMethod::landau) {
    return landau::order_parameter_landau(D, mu, n, a2_variant(spec.convention));
  }
  if (is_corner(mu)) {
    throw Error(ErrorCode::degenerate_gap, "lobe corner");
  }
  return oracle::minimize_order_parameter(
             oracle::MeanFieldProblem::make(mu, D, spec.oracle_n_max))
      .psi_star;
}

GridCell evaluate(double mu, double t, double theta, double cos_theta, double D,
                  const SweepSpec& spec) {
  GridCell cell{mu, t, theta, cos_theta, D, 0, PhaseLabel::vacuum(), 0.0};
  try {
    cell.lobe_n = landau::lobe_index(mu);
    cell.phase = classify_effective(mu, D, spec.convention);
    cell.psi = cell.phase.insulating() ? 0.0 : order_parameter(mu, D, cell.lobe_n, spec);
  } catch (const Error& e) {
    cell.phase = PhaseLabel::failed(e.code());
    cell.psi = kNaN;
  }
  return cell;
}

GridCell evaluate_costheta(int n, double mu, double t, const SweepSpec& spec) {
  GridCell cell{mu, t, kNaN, kNaN, kNaN, n, PhaseLabel::superfluid(), 0.0};
  try {
    cell.D_eff = boundary_hopping(mu, n, spec.convention);
    cell.cos_theta = critical_costheta(t, mu, n, spec.convention);
    cell.theta = std::acos(cell.cos_theta);
  } catch (const Error& e) {
    cell.phase = PhaseLabel::failed(e.code());
    cell.psi = kNaN;
  }
  return cell;
}

}  // namespace

std::string_view to_string(Convention c) noexcept {
  return c == Convention::paper ? "paper" : "variational";
}

Convention convention_from_string(std::string_view name) {
  if (name == "paper") return Convention::paper;
  if (name == "variational") return Convention::variational;
  throw Error(ErrorCode::config, "unknown convention '" + std::string(name) + "'");
}

std::string_view to_string(PsiMethod m) noexcept {
  return m == PsiMethod::landau ? "landau" : "variational";
}

PsiMethod psi_method_from_string(std::string_view name) {
  if (name == "landau") return PsiMethod::landau;
  if (name == "variational") return PsiMethod::variational;
  throw Error(ErrorCode::config, "unknown psi method '" + std::string(name) + "'");
}

landau::A2Variant a2_variant(Convention c) noexcept {
  return c == Convention::paper ? landau::A2Variant::consistent
                                : landau::A2Variant::variational;
}

double boundary_hopping(double mu, int n, Convention convention) {
  landau::require_inside_lobe(mu, n);
  double reciprocal = -(n + 1) / (mu - 2.0 * n);
  if (n > 0) reciprocal += n / (mu - 2.0 * (n - 1));
  const double dc = 1.0 / reciprocal;
  return convention == Convention::paper ? dc : 0.5 * dc;
}

BoundaryPoint boundary_point(double mu, Convention convention) {
  const int n = landau::lobe_index(mu);
  return {mu, n, boundary_hopping(mu, n, convention), convention};
}

LobeTip lobe_tip(int n, Convention convention) {
  if (n < 1) throw Error(ErrorCode::domain, "lobe tips exist for n >= 1");
  const double lower = 2.0 * (n - 1);
  const double upper = 2.0 * n;
  const double margin = 1e-9;
  const auto negative_boundary = [&](double mu) {
    return -boundary_hopping(mu, n, Convention::paper);
  };
  const auto coarse = numeric::golden_section(negative_boundary, lower + margin,
                                              upper - margin, 1e-6);
  // 1/D_c is convex on the lobe, so its slope changes sign once at the tip.
  double lo = std::max(lower + margin, coarse.x - 1e-5);
  double hi = std::min(upper - margin, coarse.x + 1e-5);
  while (reciprocal_slope(lo, n) > 0.0) lo = 0.5 * (lower + lo);
  while (reciprocal_slope(hi, n) < 0.0) hi = 0.5 * (hi + upper);
  const double mu_star =
      numeric::bisect([n](double mu) { return reciprocal_slope(mu, n); }, lo, hi, 0.0);
  return {mu_star, boundary_hopping(mu_star, n, convention)};
}

std::string PhaseLabel::to_string() const {
  switch (kind) {
    case Kind::vacuum:
      return "vacuum";
    case Kind::mott:
      return "mott:" + std::to_string(n);
    case Kind::superfluid:
      return "superfluid";
    case Kind::error:
      return "error:" + std::string(rotobh::to_string(error));
  }
  return "error:unknown";
}

PhaseLabel PhaseLabel::parse(std::string_view text) {
  if (text == "vacuum") return vacuum();
  if (text == "superfluid") return superfluid();
  if (text.starts_with("mott:")) {
    const auto digits = text.substr(5);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 1) {
      throw Error(ErrorCode::config, "bad Mott label '" + std::string(text) + "'");
    }
    return mott(n);
  }
  if (text.starts_with("error:")) return failed(error_code_from_string(text.substr(6)));
  throw Error(ErrorCode::config, "unknown phase label '" + std::string(text) + "'");
}

PhaseLabel classify_effective(double mu, double D, Convention convention) {
  const int n = landau::lobe_index(mu);
  const PhaseLabel insulator = n == 0 ? PhaseLabel::vacuum() : PhaseLabel::mott(n);
  if (is_corner(mu)) return D > 0.0 ? PhaseLabel::superfluid() : insulator;
  return D < boundary_hopping(mu, n, convention) ? insulator : PhaseLabel::superfluid();
}

PhaseLabel classify(double mu, double t, double theta, Convention convention) {
  return classify_effective(mu, t * std::cos(theta), convention);
}

double critical_costheta(double t, double mu, int n, Convention convention) {
  if (!(t > 0.0)) throw Error(ErrorCode::domain, "t/U must be positive");
  const double ratio = boundary_hopping(mu, n, convention) / t;
  if (ratio > 1.0) {
    std::ostringstream os;
    os << "t/U = " << t << " is below the boundary " << ratio * t
       << "; no rotation reaches it";
    throw Error(ErrorCode::out_of_reach, os.str());
  }
  return ratio;
}

PhaseGrid sweep(const SweepSpec& spec) {
  // costheta_curve pairs one mu with each lobe, so that axis need not be ordered.
  require_axis(spec.mu_axis, "mu", spec.mode != SweepMode::costheta_curve);
  require_axis(spec.hopping_axis, spec.mode == SweepMode::diagram ? "D" : "t");

  PhaseGrid grid{spec.mode, spec.convention, spec.psi_method, {}};
  const auto& mus = spec.mu_axis;
  const auto& hops = spec.hopping_axis;

  switch (spec.mode) {
    case SweepMode::diagram: {
      grid.cells.resize(mus.size() * hops.size());
      numeric::parallel_for(grid.cells.size(), spec.workers, [&](std::size_t i) {
        const double mu = mus[i / hops.size()];
        const double D = hops[i % hops.size()];
        grid.cells[i] = evaluate(mu, D, 0.0, 1.0, D, spec);
      });
      break;
    }
    case SweepMode::sensing_loop: {
      require_axis(spec.theta_axis, "theta");
      const auto& thetas = spec.theta_axis;
      const std::size_t per_mu = hops.size() * thetas.size();
      grid.cells.resize(mus.size() * per_mu);
      numeric::parallel_for(grid.cells.size(), spec.workers, [&](std::size_t i) {
        const double mu = mus[i / per_mu];
        const double t = hops[(i % per_mu) / thetas.size()];
        const double theta = thetas[i % thetas.size()];
        const double c = std::cos(theta);
        grid.cells[i] = evaluate(mu, t, theta, c, t * c, spec);
      });
      break;
    }
    case SweepMode::costheta_curve: {
      if (spec.lobes.empty() || spec.lobes.size() != mus.size()) {
        throw Error(ErrorCode::config, "costheta curve needs one mu per lobe");
      }
      grid.cells.resize(spec.lobes.size() * hops.size());
      numeric::parallel_for(grid.cells.size(), spec.workers, [&](std::size_t i) {
        const std::size_t row = i / hops.size();
        grid.cells[i] = evaluate_costheta(spec.lobes[row], mus[row], hops[i % hops.size()], spec);
      });
      break;
    }
  }
  return grid;
}

}  // namespace rotobh::phase
