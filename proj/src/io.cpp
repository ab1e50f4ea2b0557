#include "rotobh/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rotobh/error.hpp"

namespace rotobh::io {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

const std::string& cell_text(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw Error(ErrorCode::config, "expected a text cell");
}

double cell_double(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return parse_double(cell_text(v));
}

int cell_int(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<int>(*i);
  const auto& s = cell_text(v);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::config, "bad integer cell '" + s + "'");
  }
  return n;
}

const std::vector<std::string>& diagram_columns() {
  static const std::vector<std::string> cols{"mu_over_U", "D_eff", "lobe_n", "phase", "psi"};
  return cols;
}

const std::vector<std::string>& loop_columns() {
  static const std::vector<std::string> cols{"mu_over_U", "t_over_U", "theta", "cos_theta",
                                             "D_eff",     "lobe_n",   "phase", "psi"};
  return cols;
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::config, "bad number '" + std::string(text) + "'");
  }
  return v;
}

std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

void write_csv(std::ostream& os, const Table& table) {
  os << "# " << kFormatTag << ' ' << table.subcommand << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_value(row[i]);
    }
    os << '\n';
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

Table read_csv(std::istream& is) {
  Table table;
  std::string line;
  const std::string prefix = "# " + std::string(kFormatTag) + " ";
  if (!std::getline(is, line) || !line.starts_with(prefix)) {
    throw Error(ErrorCode::config, "missing '" + prefix + "' header");
  }
  table.subcommand = line.substr(prefix.size());
  if (!std::getline(is, line)) throw Error(ErrorCode::config, "missing column header");
  table.columns = split(line, ',');
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != table.columns.size()) {
      throw Error(ErrorCode::config, "row width does not match the header");
    }
    std::vector<Value> row;
    row.reserve(cells.size());
    for (auto& c : cells) row.emplace_back(std::move(c));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table parse_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_csv(is);
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json j;
  j["meta"] = table.meta;
  j["meta"]["format"] = kFormatTag;
  j["meta"]["subcommand"] = table.subcommand;
  j["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& v : row) {
      std::visit(
          [&r](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(x)) {
                r.push_back(x);
              } else {
                r.push_back(nullptr);
              }
            } else {
              r.push_back(x);
            }
          },
          v);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string_view grid_subcommand(phase::SweepMode mode) noexcept {
  switch (mode) {
    case phase::SweepMode::diagram:
      return "phase-diagram";
    case phase::SweepMode::sensing_loop:
      return "order-parameter";
    case phase::SweepMode::costheta_curve:
      return "costheta-curve";
  }
  return "phase-diagram";
}

Table grid_table(const phase::PhaseGrid& grid) {
  Table t;
  t.subcommand = std::string(grid_subcommand(grid.mode));
  t.meta["convention"] = std::string(phase::to_string(grid.convention));
  t.meta["psi_method"] = std::string(phase::to_string(grid.psi_method));
  const bool diagram = grid.mode == phase::SweepMode::diagram;
  t.columns = diagram ? diagram_columns() : loop_columns();
  t.rows.reserve(grid.cells.size());
  for (const auto& c : grid.cells) {
    const std::int64_t lobe = c.lobe_n;
    if (diagram) {
      t.rows.push_back({c.mu_over_U, c.D_eff, lobe, c.phase.to_string(), c.psi});
    } else {
      t.rows.push_back({c.mu_over_U, c.t_over_U, c.theta, c.cos_theta, c.D_eff, lobe,
                        c.phase.to_string(), c.psi});
    }
  }
  return t;
}

phase::PhaseGrid grid_from_table(const Table& table, phase::Convention convention,
                                 phase::PsiMethod psi_method) {
  phase::PhaseGrid grid;
  grid.convention = convention;
  grid.psi_method = psi_method;
  if (table.subcommand == "phase-diagram") {
    grid.mode = phase::SweepMode::diagram;
  } else if (table.subcommand == "order-parameter") {
    grid.mode = phase::SweepMode::sensing_loop;
  } else if (table.subcommand == "costheta-curve") {
    grid.mode = phase::SweepMode::costheta_curve;
  } else {
    throw Error(ErrorCode::config, "'" + table.subcommand + "' does not hold a phase grid");
  }
  const bool diagram = grid.mode == phase::SweepMode::diagram;
  if (table.columns != (diagram ? diagram_columns() : loop_columns())) {
    throw Error(ErrorCode::config, "unexpected columns for " + table.subcommand);
  }
  grid.cells.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    phase::GridCell c;
    if (diagram) {
      c.mu_over_U = cell_double(r[0]);
      c.D_eff = cell_double(r[1]);
      c.t_over_U = c.D_eff;
      c.theta = 0.0;
      c.cos_theta = 1.0;
      c.lobe_n = cell_int(r[2]);
      c.phase = phase::PhaseLabel::parse(cell_text(r[3]));
      c.psi = cell_double(r[4]);
    } else {
      c.mu_over_U = cell_double(r[0]);
      c.t_over_U = cell_double(r[1]);
      c.theta = cell_double(r[2]);
      c.cos_theta = cell_double(r[3]);
      c.D_eff = cell_double(r[4]);
      c.lobe_n = cell_int(r[5]);
      c.phase = phase::PhaseLabel::parse(cell_text(r[6]));
      c.psi = cell_double(r[7]);
    }
    grid.cells.push_back(c);
  }
  return grid;
}

bool same_cells(const phase::PhaseGrid& a, const phase::PhaseGrid& b) {
  if (a.mode != b.mode || a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& x = a.cells[i];
    const auto& y = b.cells[i];
    if (!same_bits(x.mu_over_U, y.mu_over_U) || !same_bits(x.t_over_U, y.t_over_U) ||
        !same_bits(x.theta, y.theta) || !same_bits(x.cos_theta, y.cos_theta) ||
        !same_bits(x.D_eff, y.D_eff) || !same_bits(x.psi, y.psi) || x.lobe_n != y.lobe_n ||
        !(x.phase == y.phase)) {
      return false;
    }
  }
  return true;
}

}  // namespace rotobh::io
