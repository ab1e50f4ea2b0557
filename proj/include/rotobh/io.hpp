#pragma once

// Tabular output: CSV with a two-line header
//   # rotobh v1 <subcommand>
//   col1,col2,...
// and a JSON mirror {"meta": {...}, "columns": [...], "rows": [[...]]}.
// Doubles are written as the shortest decimal string that parses back to the
// same binary64 value.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rotobh/phase_diagram.hpp"
#include <json.hpp>

namespace rotobh::io {

inline constexpr std::string_view kFormatTag = "rotobh v1";

std::string format_double(double value);
double parse_double(std::string_view text);

using Value = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::string subcommand;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

std::string format_value(const Value& v);

void write_csv(std::ostream& os, const Table& table);
std::string to_csv(const Table& table);

// Reads a CSV written by write_csv; every cell comes back as a string.
Table read_csv(std::istream& is);
Table parse_csv(std::string_view text);

nlohmann::ordered_json to_json(const Table& table);

// Column layouts for phase grids:
//   phase-diagram:                      mu_over_U,D_eff,lobe_n,phase,psi
//   order-parameter, costheta-curve:    mu_over_U,t_over_U,theta,cos_theta,
//                                       D_eff,lobe_n,phase,psi
std::string_view grid_subcommand(phase::SweepMode mode) noexcept;
Table grid_table(const phase::PhaseGrid& grid);

// Inverse of grid_table for a table read back from CSV (string cells) or
// built in memory. Convention and psi method are not part of the CSV and are
// taken from the arguments.
phase::PhaseGrid grid_from_table(const Table& table, phase::Convention convention,
                                 phase::PsiMethod psi_method);

/// Bitwise equality of every numeric field, so NaN sentinels compare equal.
bool same_cells(const phase::PhaseGrid& a, const phase::PhaseGrid& b);

}  // namespace rotobh::io
