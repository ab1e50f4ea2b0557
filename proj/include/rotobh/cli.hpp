#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rotobh/io.hpp"
#include "rotobh/phase_diagram.hpp"
#include "rotobh/sensing.hpp"

namespace rotobh::cli {

enum class Format { csv, json };

struct RunConfig {
  std::string subcommand;

  std::optional<double> t_over_U;
  std::optional<double> mu_over_U;
  std::optional<int> lobe;

  // Ring frame (all of mass, radius, sites) or direct gamma / theta.
  std::optional<double> mass_amu;
  std::optional<double> radius_um;
  std::optional<int> n_sites;
  std::optional<double> omega;
  std::optional<double> gamma;
  std::optional<double> theta;

  phase::Convention convention = phase::Convention::paper;
  phase::PsiMethod psi_method = phase::PsiMethod::landau;
  sensing::Mode mode = sensing::Mode::exact;
  sensing::Exponent exponent = sensing::Exponent::dimensional;
  int n_max = 0;
  int fit_points = 200;
  unsigned jobs = 1;

  std::string mu_grid;
  std::string d_grid;
  std::string t_grid;
  std::string theta_grid;
  std::string dtheta_grid;
  std::string lobes = "1,2,3";
  std::string mu_list;
  std::optional<double> delta_measured;

  std::string out;
  Format format = Format::csv;
};

// "start:stop:step" (inclusive, last point snapped to stop) or "a,b,c".
// Throws Error(config) for an empty or malformed grid.
std::vector<double> parse_grid(const std::string& text, const char* name);

// gamma from the ring frame, --gamma, or 1 in dimensionless mode. Throws
// Error(config) when frame and direct values are mixed or the frame is partial.
double resolve_gamma(const RunConfig& config);

// theta from --theta or gamma * omega; nullopt when neither is given.
std::optional<double> resolve_theta(const RunConfig& config);

// Builds the output table for config.subcommand. Throws rotobh::Error.
io::Table execute(const RunConfig& config);

// Full front end: parses argv (flags override --config file values), runs
// the subcommand, and writes the table to --out or `out`. Returns the exit
// status: 0 ok, 2 config error, 3 domain error, 4 convergence failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotobh::cli
