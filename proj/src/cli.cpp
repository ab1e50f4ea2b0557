#include "rotobh/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "rotobh/core_model.hpp"
#include "rotobh/error.hpp"
#include "rotobh/landau.hpp"
#include "rotobh/numeric.hpp"
#include "rotobh/oracle.hpp"

namespace rotobh::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> parse_lobes(const std::string& text) {
  std::vector<int> lobes;
  for (double v : parse_grid(text, "lobes")) {
    if (v < 0.0 || v != std::floor(v)) {
      throw Error(ErrorCode::config, "lobes must be non-negative integers");
    }
    lobes.push_back(static_cast<int>(v));
  }
  return lobes;
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::config, std::string("missing ") + flag);
  if (!std::isfinite(*v)) throw Error(ErrorCode::config, std::string(flag) + " must be finite");
  return *v;
}

int lobe_for(const RunConfig& c, double mu) {
  return c.lobe ? *c.lobe : landau::lobe_index(mu);
}

nlohmann::ordered_json base_meta(const RunConfig& c) {
  nlohmann::ordered_json m;
  m["convention"] = std::string(phase::to_string(c.convention));
  m["psi_method"] = std::string(phase::to_string(c.psi_method));
  m["mode"] = std::string(sensing::to_string(c.mode));
  m["exponent"] = c.exponent == sensing::Exponent::dimensional ? "dimensional" : "printed";
  m["fit_protocol"] = {{"grid_points", c.fit_points},
                       {"objective", "least squares on a uniform dtheta grid over [0, theta]"},
                       {"a_range", {1e-3, 1e3}},
                       {"search", "log-spaced scan (121 points) then golden section in log a"}};
  m["tolerances"] = {{"lobe_tip_mu", 1e-10},
                     {"oracle_psi", "bisection on psi - <a> to machine precision"},
                     {"oracle_boundary", 1e-9},
                     {"half_max_bisection", "machine precision"},
                     {"eigen_residual", 1e-10}};
  return m;
}

io::Table grid_sweep(const RunConfig& c, phase::SweepSpec spec) {
  spec.convention = c.convention;
  spec.psi_method = c.psi_method;
  spec.oracle_n_max = c.n_max;
  spec.workers = c.jobs;
  auto table = io::grid_table(phase::sweep(spec));
  auto meta = base_meta(c);
  meta.update(table.meta);
  table.meta = std::move(meta);
  return table;
}

io::Table phase_diagram(const RunConfig& c) {
  phase::SweepSpec s;
  s.mode = phase::SweepMode::diagram;
  s.mu_axis = parse_grid(c.mu_grid, "mu-grid");
  s.hopping_axis = parse_grid(c.d_grid, "d-grid");
  return grid_sweep(c, std::move(s));
}

io::Table order_parameter(const RunConfig& c) {
  phase::SweepSpec s;
  s.mode = phase::SweepMode::sensing_loop;
  s.mu_axis = c.mu_grid.empty() ? std::vector<double>{require(c.mu_over_U, "--mu")}
                                : parse_grid(c.mu_grid, "mu-grid");
  s.hopping_axis = parse_grid(c.t_grid, "t-grid");
  s.theta_axis = parse_grid(c.theta_grid, "theta-grid");
  return grid_sweep(c, std::move(s));
}

io::Table costheta_curve(const RunConfig& c) {
  phase::SweepSpec s;
  s.mode = phase::SweepMode::costheta_curve;
  s.lobes = parse_lobes(c.lobes);
  if (c.mu_list.empty()) {
    for (int n : s.lobes) s.mu_axis.push_back(n == 0 ? -1.0 : 2.0 * n - 1.0);
  } else {
    s.mu_axis = parse_grid(c.mu_list, "mu-list");
  }
  if (s.mu_axis.size() != s.lobes.size()) {
    throw Error(ErrorCode::config, "--mu-list needs one value per lobe");
  }
  s.hopping_axis = parse_grid(c.t_grid, "t-grid");
  return grid_sweep(c, std::move(s));
}

io::Table sensitivity(const RunConfig& c) {
  const auto thetas = parse_grid(c.theta_grid, "theta-grid");
  const auto dthetas = parse_grid(c.dtheta_grid, "dtheta-grid");
  io::Table t;
  t.subcommand = "sensitivity";
  t.meta = base_meta(c);
  t.columns = {"theta", "delta_theta", "delta", "status"};
  for (double th : thetas) {
    for (double dt : dthetas) {
      double d = kNaN;
      std::string status = "ok";
      try {
        d = sensing::delta_exact(th, dt);
      } catch (const Error& e) {
        status = "error:" + std::string(to_string(e.code()));
      }
      t.rows.push_back({th, dt, d, status});
    }
  }
  return t;
}

io::Table resolution(const RunConfig& c) {
  const auto thetas = parse_grid(c.theta_grid, "theta-grid");
  const double gamma = resolve_gamma(c);
  std::vector<sensing::Resolution> results(thetas.size());
  const sensing::ResolutionOptions options{c.fit_points, c.exponent, gamma};
  numeric::parallel_for(thetas.size(), c.jobs, [&](std::size_t i) {
    results[i] = sensing::resolution(thetas[i], c.mode, options);
  });
  io::Table t;
  t.subcommand = "resolution";
  t.meta = base_meta(c);
  t.meta["gamma"] = gamma;
  t.columns = {"theta",         "omega",         "a_fit", "delta_max",
               "epsilon_theta", "epsilon_omega", "mode"};
  for (const auto& r : results) {
    t.rows.push_back({r.theta, r.theta / gamma, r.a_fit, r.delta_max, r.epsilon_theta,
                      *r.epsilon_omega, std::string(sensing::to_string(r.mode))});
  }
  return t;
}

io::Table fit_delta(const RunConfig& c) {
  const auto thetas = parse_grid(c.theta_grid, "theta-grid");
  std::vector<sensing::FitResult> fits(thetas.size());
  numeric::parallel_for(thetas.size(), c.jobs, [&](std::size_t i) {
    fits[i] = sensing::fit_a(thetas[i], c.fit_points);
  });
  io::Table t;
  t.subcommand = "fit-delta";
  t.meta = base_meta(c);
  t.meta["theta_m_fit"] = sensing::theta_m_fit(c.fit_points);
  t.meta["theta_m_exact"] = sensing::theta_m_exact();
  t.meta["theta_m_quoted"] = sensing::kQuotedThetaM;
  t.columns = {"theta", "a_fit", "residual_rms", "max_abs_error", "fit_warning"};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const auto& f = fits[i];
    t.rows.push_back({thetas[i], f.a, f.residual_rms, f.max_abs_error, f.quality_warning});
  }
  return t;
}

io::Table invert(const RunConfig& c) {
  const double measured = require(c.delta_measured, "--delta");
  const double mu = require(c.mu_over_U, "--mu");
  const int n = lobe_for(c, mu);
  const double gamma = resolve_gamma(c);
  const auto theta = resolve_theta(c);
  if (!theta) throw Error(ErrorCode::config, "invert needs --theta or a frame with --omega");
  const auto inv = sensing::invert_rotation_change(measured, mu, n, *theta, gamma,
                                                   phase::a2_variant(c.convention));
  io::Table t;
  t.subcommand = "invert";
  t.meta = base_meta(c);
  t.columns = {"delta_measured", "mu_over_U",   "lobe_n",    "theta",
               "gamma",          "delta_theta", "delta_omega", "ambiguous",
               "second_delta_theta"};
  t.rows.push_back({measured, mu, static_cast<std::int64_t>(n), *theta, gamma, inv.delta_theta,
                    inv.delta_omega, inv.ambiguous, inv.second_delta_theta.value_or(kNaN)});
  return t;
}

io::Table oracle_check(const RunConfig& c) {
  const double mu = require(c.mu_over_U, "--mu");
  const int n = lobe_for(c, mu);
  landau::require_inside_lobe(mu, n);
  const int n_max = c.n_max > 0 ? c.n_max : n + 8;

  io::Table t;
  t.subcommand = "oracle-check";
  t.meta = base_meta(c);
  t.meta["n_max"] = n_max;
  t.columns = {"check", "mu_over_U", "lobe_n", "value", "expected", "rel_error", "pass"};
  const auto lobe = static_cast<std::int64_t>(n);
  const auto add = [&](const char* name, double value, double expected, double tol) {
    const double rel = std::abs(value - expected) / std::abs(expected);
    t.rows.push_back({std::string(name), mu, lobe, value, expected, rel, rel <= tol});
  };

  const auto numeric_boundary = oracle::boundary_numeric(mu, n_max);
  const double paper = phase::boundary_hopping(mu, n, phase::Convention::paper);
  add("convention_ratio", numeric_boundary.D_cv / paper, 0.5, 2e-3);

  // Just past the variational boundary: D = D_cv / u with u close to 1.
  const double dcv = phase::boundary_hopping(mu, n, phase::Convention::variational);
  const double u = 1.0 / 1.002;
  const auto r = oracle::minimize_order_parameter(oracle::MeanFieldProblem::make(mu, dcv / u, n_max));
  const double profile = u * std::sqrt(1.0 - u);
  add("kappa_recovery", r.psi_star / profile,
      landau::kappa(mu, n, landau::A2Variant::variational), 0.02);

  const double gap = std::abs(r.psi_star - r.a_expect);
  t.rows.push_back({std::string("stationarity"), mu, lobe, gap, 0.0, gap, gap <= 1e-6});
  return t;
}

void write_table(const io::Table& table, const RunConfig& c, std::ostream& out) {
  std::string text;
  if (c.format == Format::json) {
    text = io::to_json(table).dump(2) + "\n";
  } else {
    text = io::to_csv(table);
  }
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::config, "cannot open '" + c.out + "' for writing");
  file << text;
  if (!file) throw Error(ErrorCode::config, "failed writing '" + c.out + "'");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text, const char* name) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::config, std::string(name) + ": " + why);
  };
  const auto number = [](std::string piece) {
    const auto first = piece.find_first_not_of(" \t");
    const auto last = piece.find_last_not_of(" \t");
    return io::parse_double(first == std::string::npos ? "" : piece.substr(first, last - first + 1));
  };
  if (text.empty()) fail("grid is empty");
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':')) parts.push_back(number(piece));
    if (parts.size() != 3) fail("expected start:stop:step");
    const double start = parts[0];
    const double stop = parts[1];
    const double step = parts[2];
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || step == 0.0) {
      fail("bad range");
    }
    const double span = (stop - start) / step;
    if (span < -1e-9) fail("grid is empty");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-6)) + 1;
    if (count > 10'000'000) fail("grid too large");
    for (std::size_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
    if (std::abs(values.back() - stop) <= 1e-9 * std::max(1.0, std::abs(stop))) {
      values.back() = stop;
    }
  } else {
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty()) fail("empty entry");
      values.push_back(number(piece));
    }
  }
  if (values.empty()) fail("grid is empty");
  for (double v : values) {
    if (!std::isfinite(v)) fail("non-finite value");
  }
  return values;
}

double resolve_gamma(const RunConfig& c) {
  const bool any_frame = c.mass_amu || c.radius_um || c.n_sites;
  const bool direct = c.gamma || c.theta;
  if (any_frame && direct) {
    throw Error(ErrorCode::config, "give either the ring frame or --gamma/--theta, not both");
  }
  if (any_frame) {
    if (!c.mass_amu || !c.radius_um || !c.n_sites) {
      throw Error(ErrorCode::config, "ring frame needs --mass-amu, --radius-um and --sites");
    }
    RingFrame frame{*c.mass_amu * kAtomicMassUnit, *c.radius_um * 1e-6, *c.n_sites,
                    c.omega.value_or(0.0)};
    try {
      return scale_factor(frame);
    } catch (const Error& e) {
      throw Error(ErrorCode::config, e.what());
    }
  }
  if (c.gamma) {
    if (!(*c.gamma > 0.0) || !std::isfinite(*c.gamma)) {
      throw Error(ErrorCode::config, "--gamma must be positive and finite");
    }
    return *c.gamma;
  }
  return 1.0;
}

std::optional<double> resolve_theta(const RunConfig& c) {
  if (c.theta) return c.theta;
  if (c.omega) return peierls_phase(resolve_gamma(c), *c.omega);
  return std::nullopt;
}

io::Table execute(const RunConfig& c) {
  if (c.fit_points < 50) throw Error(ErrorCode::config, "--fit-points must be >= 50");
  if (c.jobs == 0) throw Error(ErrorCode::config, "--jobs must be >= 1");
  if (c.n_max != 0 && c.n_max < 4) throw Error(ErrorCode::config, "--n-max must be >= 4");
  if (c.subcommand == "phase-diagram") return phase_diagram(c);
  if (c.subcommand == "order-parameter") return order_parameter(c);
  if (c.subcommand == "costheta-curve") return costheta_curve(c);
  if (c.subcommand == "sensitivity") return sensitivity(c);
  if (c.subcommand == "resolution") return resolution(c);
  if (c.subcommand == "fit-delta") return fit_delta(c);
  if (c.subcommand == "invert") return invert(c);
  if (c.subcommand == "oracle-check") return oracle_check(c);
  throw Error(ErrorCode::config, "unknown subcommand '" + c.subcommand + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation sensing at the Mott-insulator/superfluid edge of a rotating "
               "Bose-Hubbard ring",
               "rotobh"};
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.require_subcommand(1, 1);

  RunConfig c;
  std::string convention = "paper";
  std::string psi_method = "landau";
  std::string mode = "exact";
  std::string exponent = "dimensional";
  std::string format = "csv";

  app.add_option("--t", c.t_over_U, "Hopping t/U");
  app.add_option("--mu", c.mu_over_U, "Chemical potential mu/U");
  app.add_option("--lobe", c.lobe, "Mott lobe n (default: lobe containing --mu)");
  app.add_option("--mass-amu", c.mass_amu, "Particle mass in atomic mass units");
  app.add_option("--radius-um", c.radius_um, "Ring radius in micrometres");
  app.add_option("--sites", c.n_sites, "Number of ring sites");
  app.add_option("--omega", c.omega, "Rotation angular velocity, rad/s");
  app.add_option("--gamma", c.gamma, "Scale factor gamma (s), bypassing the ring frame");
  app.add_option("--theta", c.theta, "Peierls phase theta (rad), bypassing the ring frame");
  app.add_option("--convention", convention, "Boundary convention")
      ->check(CLI::IsMember({"paper", "variational"}));
  app.add_option("--psi-method", psi_method, "Order parameter evaluation")
      ->check(CLI::IsMember({"landau", "variational"}));
  app.add_option("--mode", mode, "Resolution mode")->check(CLI::IsMember({"exact", "fit"}));
  app.add_option("--exponent", exponent, "Fit-mode resolution scaling in a")
      ->check(CLI::IsMember({"dimensional", "printed"}));
  app.add_option("--n-max", c.n_max, "Oracle Fock truncation (default lobe + 8)");
  app.add_option("--fit-points", c.fit_points, "Fit grid size");
  app.add_option("--jobs", c.jobs, "Worker threads for sweeps");
  // Config files split comma lists into several values; join them back.
  const auto list = [&](const char* flag, std::string& target, const char* help) {
    app.add_option(flag, target, help)
        ->multi_option_policy(CLI::MultiOptionPolicy::Join)
        ->delimiter(',');
  };
  list("--mu-grid", c.mu_grid, "mu/U axis, start:stop:step or a,b,c");
  list("--d-grid", c.d_grid, "Effective hopping axis");
  list("--t-grid", c.t_grid, "t/U axis");
  list("--theta-grid", c.theta_grid, "theta axis (rad)");
  list("--dtheta-grid", c.dtheta_grid, "dtheta axis (rad)");
  list("--lobes", c.lobes, "Lobes for costheta-curve");
  list("--mu-list", c.mu_list, "mu/U per lobe for costheta-curve");
  app.add_option("--delta", c.delta_measured, "Measured order-parameter change");
  app.add_option("--out", c.out, "Output file (default: standard output)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  const std::vector<std::pair<const char*, const char*>> subcommands{
      {"phase-diagram", "Phase labels and psi over (mu/U, D)"},
      {"order-parameter", "psi along the sensing loop over (t/U, theta)"},
      {"costheta-curve", "Critical cos(theta) against t/U per lobe"},
      {"sensitivity", "delta over (theta, dtheta)"},
      {"resolution", "Half-maximum resolution against theta"},
      {"fit-delta", "Exponential fit parameter a(theta)"},
      {"invert", "Rotation change from a measured order-parameter change"},
      {"oracle-check", "Compare perturbative results with the variational oracle"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_status(ErrorCode::config);
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    c.convention = phase::convention_from_string(convention);
    c.psi_method = phase::psi_method_from_string(psi_method);
    c.mode = sensing::mode_from_string(mode);
    c.exponent = sensing::exponent_from_string(exponent);
    c.format = format == "json" ? Format::json : Format::csv;
    const auto table = execute(c);
    write_table(table, c, out);
  } catch (const Error& e) {
    err << "rotobh: " << to_string(e.code()) << " error: " << e.what() << '\n';
    return exit_status(e.code());
  }
  return 0;
}

}  // namespace rotobh::cli
