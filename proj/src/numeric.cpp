#include "rotobh/numeric.hpp"

#include <cmath>
#include <limits>

namespace rotobh::numeric {

namespace {
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
}

Minimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                       double tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > tol && it < 500) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++it;
    if (c >= d) break;  // bracket collapsed to floating resolution
  }
  Minimum best{c, fc, it};
  if (fd < best.value) best = {d, fd, it};
  for (double end : {lo, hi}) {
    const double fe = f(end);
    if (fe < best.value) best = {end, fe, it};
  }
  return best;
}

Minimum scan_then_golden(const std::function<double(double)>& f, double lo, double hi,
                         int points, double tol) {
  points = std::max(points, 3);
  const double step = (hi - lo) / (points - 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double v = f(lo + i * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + std::max(best - 1, 0) * step;
  const double b = lo + std::min(best + 1, points - 1) * step;
  return golden_section(f, a, b, tol);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const bool lo_negative = f(lo) < 0.0;
  for (int it = 0; it < 2000 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rotobh::numeric
