#include "rotobh/lambert_w.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rotobh/error.hpp"

namespace rotobh {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e

// Series in p = +-sqrt(2 (1 + e z)) about the branch point.
double branch_point_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

double initial_guess(LambertBranch branch, double z) {
  const double q = std::max(0.0, 2.0 * (1.0 + std::numbers::e * z));
  if (branch == LambertBranch::principal) {
    if (z < -0.25) return branch_point_series(std::sqrt(q));
    if (z < 3.0) return std::log1p(z) * (1.0 - std::log1p(std::log1p(z)) / (2.0 + std::log1p(z)));
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  if (z < -0.25) return branch_point_series(-std::sqrt(q));
  const double l1 = std::log(-z);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(LambertBranch branch, double z) {
  if (!std::isfinite(z)) throw Error(ErrorCode::domain, "Lambert W argument must be finite");
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * kInvE;
  if (z < -kInvE - slack ||
      (branch == LambertBranch::minus_one && !(z < 0.0))) {
    std::ostringstream os;
    os << "z = " << z << " is outside the domain of the "
       << (branch == LambertBranch::principal ? "principal" : "minus-one") << " branch";
    throw Error(ErrorCode::domain, os.str());
  }
  if (z <= -kInvE) return -1.0;
  if (z == 0.0) return 0.0;

  double w = initial_guess(branch, z);
  for (int it = 0; it < 64; ++it) {
    // Halley step on f(w) = w e^w - z.
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    double next = w - step;
    // Stay on the requested side of the branch point.
    if (branch == LambertBranch::principal && next < -1.0) next = 0.5 * (w - 1.0);
    if (branch == LambertBranch::minus_one && next > -1.0) next = 0.5 * (w - 1.0);
    const bool done = std::abs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                 std::max(1.0, std::abs(next));
    w = next;
    if (done) break;
  }
  return w;
}

}  // namespace rotobh
