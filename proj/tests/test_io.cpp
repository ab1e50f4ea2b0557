#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "rotobh/error.hpp"
#include "rotobh/io.hpp"

using namespace rotobh;

TEST_CASE("doubles round trip bit-exactly") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 20000; ++i) {
    const double x = std::bit_cast<double>(bits(rng));
    if (!std::isfinite(x)) continue;
    CHECK(std::bit_cast<std::uint64_t>(io::parse_double(io::format_double(x))) ==
          std::bit_cast<std::uint64_t>(x));
  }
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(std::isnan(io::parse_double("nan")));
  CHECK_THROWS_AS(io::parse_double("1.5x"), Error);
  CHECK_THROWS_AS(io::parse_double(""), Error);
}

TEST_CASE("csv header and cells") {
  io::Table t;
  t.subcommand = "resolution";
  t.columns = {"theta", "n", "label", "flag"};
  t.rows.push_back({0.5, std::int64_t{3}, std::string("mott:1"), true});
  const auto text = io::to_csv(t);
  CHECK(text == "# rotobh v1 resolution\ntheta,n,label,flag\n0.5,3,mott:1,true\n");
  const auto back = io::parse_csv(text);
  CHECK(back.subcommand == "resolution");
  CHECK(back.columns == t.columns);
  REQUIRE(back.rows.size() == 1);
  CHECK(std::get<std::string>(back.rows[0][2]) == "mott:1");
  CHECK_THROWS_AS(io::parse_csv("theta\n1\n"), Error);
}

TEST_CASE("json mirror") {
  io::Table t;
  t.subcommand = "fit-delta";
  t.meta["mode"] = "exact";
  t.columns = {"theta", "value"};
  t.rows.push_back({1.0, std::numeric_limits<double>::quiet_NaN()});
  const auto j = io::to_json(t);
  CHECK(j["meta"]["mode"] == "exact");
  CHECK(j["columns"][1] == "value");
  CHECK(j["rows"][0][0] == 1.0);
  CHECK(j["rows"][0][1].is_null());
}

TEST_CASE("phase grids survive a csv round trip") {
  for (auto mode : {phase::SweepMode::diagram, phase::SweepMode::sensing_loop,
                    phase::SweepMode::costheta_curve}) {
    phase::SweepSpec s;
    s.mode = mode;
    if (mode == phase::SweepMode::diagram) {
      // 2.0 sits on a lobe corner and 0.2 inside lobe 1.
      s.mu_axis = {-0.5, 0.2, 1.0, 2.0, 3.3};
      s.hopping_axis = {0.0, 0.05, 0.1, 0.2, 0.4};
    } else if (mode == phase::SweepMode::sensing_loop) {
      s.mu_axis = {1.0, 2.0};
      s.hopping_axis = {0.02, 0.06};
      s.theta_axis = {0.0, 0.4, 1.2};
      s.psi_method = phase::PsiMethod::variational;
    } else {
      s.lobes = {1, 2};
      s.mu_axis = {1.0, 3.0};
      s.hopping_axis = {0.01, 0.1, 1.0};
    }
    const auto grid = phase::sweep(s);
    const auto csv = io::to_csv(io::grid_table(grid));
    const auto back = io::grid_from_table(io::parse_csv(csv), s.convention, s.psi_method);
    CHECK(back.mode == grid.mode);
    CHECK(io::same_cells(grid, back));
    CHECK(io::to_csv(io::grid_table(back)) == csv);
  }
}

TEST_CASE("same_cells is bitwise") {
  phase::PhaseGrid a;
  a.cells.resize(1);
  a.cells[0].psi = std::numeric_limits<double>::quiet_NaN();
  auto b = a;
  CHECK(io::same_cells(a, b));
  b.cells[0].psi = 0.0;
  CHECK_FALSE(io::same_cells(a, b));
}
