#include "rotobh/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rotobh/error.hpp"

namespace rotobh::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxInverseSweeps = 8;

// Pivoted LU of a tridiagonal matrix, LAPACK gttrf layout.
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<bool> swapped;

  TridiagonalLU(const SymTridiagonal& m, double shift, double tiny) {
    const std::size_t n = m.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = m.diag[i] - shift;
    dl = m.off;
    du = m.off;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n > 1 ? n - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = true;
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl[i] * b[i];
    }
    if (n == 0) return;
    b[n - 1] /= d[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n >= 2 ? n - 2 : 0; k-- > 0;) {
      b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
    }
  }
};

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double residual_norm(const SymTridiagonal& m, std::span<const double> v, double value) {
  const auto mv = m.multiply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = mv[i] - value * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

double SymTridiagonal::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(off[i - 1]);
    if (i < off.size()) row += std::abs(off[i]);
    best = std::max(best, row);
  }
  return best;
}

std::vector<double> SymTridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = diag.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

int sturm_count(const SymTridiagonal& m, double x) {
  const std::size_t n = m.size();
  if (n == 0) return 0;
  const double pivmin = std::max(std::numeric_limits<double>::min(),
                                 kEps * kEps * std::max(1.0, m.norm_inf()));
  int count = 0;
  double q = m.diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    q = m.diag[i] - x - m.off[i - 1] * m.off[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

double lowest_eigenvalue(const SymTridiagonal& m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::domain, "empty matrix has no eigenvalues");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(m.off[i - 1]);
    if (i + 1 < n) radius += std::abs(m.off[i]);
    lo = std::min(lo, m.diag[i] - radius);
    hi = std::max(hi, m.diag[i] + radius);
  }
  const double scale = std::max(1.0, m.norm_inf());
  lo -= kEps * scale;
  hi += kEps * scale;
  // Invariant: sturm_count(lo) == 0, sturm_count(hi) >= 1.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 2.0 * kEps * scale) break;
    if (sturm_count(m, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EigenPair lowest_eigenpair(const SymTridiagonal& m) {
  const std::size_t n = m.size();
  EigenPair pair;
  pair.value = lowest_eigenvalue(m);
  const double scale = std::max(1.0, m.norm_inf());
  const double tolerance = 1e-10 * scale;
  const TridiagonalLU lu(m, pair.value, kEps * scale);

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int sweep = 1; sweep <= kMaxInverseSweeps; ++sweep) {
    lu.solve(v);
    const double len = norm2(v);
    if (!std::isfinite(len) || len == 0.0) {
      std::ostringstream os;
      os << "inverse iteration broke down after " << sweep << " sweeps";
      throw Error(ErrorCode::convergence, os.str());
    }
    for (double& x : v) x /= len;
    pair.iterations = sweep;
    pair.residual = residual_norm(m, v, pair.value);
    if (pair.residual <= 1e-3 * tolerance) break;
  }
  if (pair.residual > tolerance) {
    std::ostringstream os;
    os << "eigenvector residual " << pair.residual << " above " << tolerance << " after "
       << pair.iterations << " inverse-iteration sweeps";
    throw Error(ErrorCode::convergence, os.str());
  }
  const auto largest = std::max_element(
      v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*largest < 0.0) {
    for (double& x : v) x = -x;
  }
  pair.vector = std::move(v);
  return pair;
}

}  // namespace rotobh::linalg
