#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rotobh/error.hpp"
#include "rotobh/landau.hpp"

namespace rotobh::phase {

// paper: 1/D_c = -(n+1)/(mu - 2n) + n/(mu - 2(n-1)).
// variational: half of that, the boundary of the exact mean-field energy.
enum class Convention { paper, variational };

std::string_view to_string(Convention c) noexcept;
Convention convention_from_string(std::string_view name);

/// Landau a2 variant whose root is the boundary of this convention.
landau::A2Variant a2_variant(Convention c) noexcept;

struct BoundaryPoint {
  double mu_over_U = 0.0;
  int lobe_n = 0;
  double D_c = 0.0;
  Convention convention = Convention::paper;
};

double boundary_hopping(double mu, int n, Convention convention);
BoundaryPoint boundary_point(double mu, Convention convention);

struct LobeTip {
  double mu = 0.0;
  double D = 0.0;
};

// Maximum of the lobe-n boundary over mu. Golden-section bracketing followed
// by bisection on the derivative of 1/D_c, so mu is located to ~1e-15.
LobeTip lobe_tip(int n, Convention convention);

struct PhaseLabel {
  enum class Kind { vacuum, mott, superfluid, error };

  Kind kind = Kind::vacuum;
  int n = 0;
  ErrorCode error = ErrorCode::domain;

  static PhaseLabel vacuum() { return {Kind::vacuum, 0, ErrorCode::domain}; }
  static PhaseLabel mott(int n) { return {Kind::mott, n, ErrorCode::domain}; }
  static PhaseLabel superfluid() { return {Kind::superfluid, 0, ErrorCode::domain}; }
  static PhaseLabel failed(ErrorCode e) { return {Kind::error, 0, e}; }

  bool insulating() const noexcept { return kind == Kind::vacuum || kind == Kind::mott; }

  /// vacuum | mott:<n> | superfluid | error:<code>
  std::string to_string() const;
  static PhaseLabel parse(std::string_view text);

  friend bool operator==(const PhaseLabel&, const PhaseLabel&) = default;
};

// Insulating when D < D_c(mu, lobe_index(mu)), superfluid otherwise; at lobe
// corners any D > 0 is superfluid.
PhaseLabel classify_effective(double mu, double D, Convention convention);
PhaseLabel classify(double mu, double t, double theta, Convention convention);

// cos(theta_c) = D_c / t; Error(out_of_reach) when that exceeds 1.
double critical_costheta(double t, double mu, int n, Convention convention);

enum class SweepMode { diagram, sensing_loop, costheta_curve };
enum class PsiMethod { landau, variational };

std::string_view to_string(PsiMethod m) noexcept;
PsiMethod psi_method_from_string(std::string_view name);

struct SweepSpec {
  SweepMode mode = SweepMode::diagram;
  Convention convention = Convention::paper;
  PsiMethod psi_method = PsiMethod::landau;
  // diagram: mu rows; sensing_loop: fixed mu values; costheta_curve: one mu
  // per entry of `lobes`.
  std::vector<double> mu_axis;
  // diagram: effective hopping D; other modes: t/U.
  std::vector<double> hopping_axis;
  std::vector<double> theta_axis;  // sensing_loop only
  std::vector<int> lobes;          // costheta_curve only
  int oracle_n_max = 0;            // <= 0: lobe + 8
  unsigned workers = 1;
};

struct GridCell {
  double mu_over_U = 0.0;
  double t_over_U = 0.0;
  double theta = 0.0;
  double cos_theta = 1.0;
  double D_eff = 0.0;
  int lobe_n = 0;
  PhaseLabel phase;
  double psi = 0.0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct PhaseGrid {
  SweepMode mode = SweepMode::diagram;
  Convention convention = Convention::paper;
  PsiMethod psi_method = PsiMethod::landau;
  std::vector<GridCell> cells;
};

// Row-major cells:
//   diagram         mu outer, D inner (theta = 0)
//   sensing_loop    mu, then t, then theta
//   costheta_curve  lobe outer, t inner; theta = theta_c, D_eff = D_c
// Per-cell failures become error:<code> labels with NaN psi. Throws
// Error(config) for empty, non-finite, or non-monotone axes.
PhaseGrid sweep(const SweepSpec& spec);

}  // namespace rotobh::phase
