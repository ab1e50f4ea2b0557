#pragma once

namespace rotobh {

enum class LambertBranch { principal, minus_one };

// Solves w e^w = z. The principal branch covers z >= -1/e with w >= -1; the
// minus-one branch covers -1/e <= z < 0 with w <= -1. Arguments within a few
// ulps below -1/e are treated as the branch point. Throws Error(domain)
// outside the branch domain.
double lambert_w(LambertBranch branch, double z);

}  // namespace rotobh
