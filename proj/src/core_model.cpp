#include "rotobh/core_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rotobh/error.hpp"

namespace rotobh {

void RingFrame::validate() const {
  if (!std::isfinite(mass) || !std::isfinite(radius) || !std::isfinite(omega)) {
    throw Error(ErrorCode::domain, "ring frame fields must be finite");
  }
  if (mass <= 0.0) throw Error(ErrorCode::domain, "ring frame mass must be positive");
  if (radius <= 0.0) throw Error(ErrorCode::domain, "ring frame radius must be positive");
  if (sites < 3) {
    throw Error(ErrorCode::domain,
                "ring needs at least 3 sites, got " + std::to_string(sites));
  }
}

void ModelParams::validate() const {
  if (!std::isfinite(t_over_U) || !std::isfinite(mu_over_U)) {
    throw Error(ErrorCode::domain, "model parameters must be finite");
  }
  if (t_over_U < 0.0) throw Error(ErrorCode::domain, "t/U must be non-negative");
}

double scale_factor(const RingFrame& frame) {
  frame.validate();
  return 2.0 * std::numbers::pi * frame.mass * frame.radius * frame.radius /
         (static_cast<double>(frame.sites) * kHbar);
}

double peierls_phase(double gamma, double omega) { return gamma * omega; }

double effective_hopping(const ModelParams& params, double theta) {
  params.validate();
  return params.t_over_U * std::cos(theta);
}

}  // namespace rotobh
