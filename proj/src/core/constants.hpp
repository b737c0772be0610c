#pragma once

#include <cmath>
#include <numbers>

namespace gre {

inline constexpr double kPhi = std::numbers::phi;      // golden mean
inline constexpr double kInvPhi = std::numbers::phi - 1.0;
inline const double kSqrtPhiPlus2 = std::sqrt(kPhi + 2.0);

// Absolute tolerance on eigen-coordinates for invariant-set membership.
inline constexpr double kMembershipTol = 1e-9;

}  // namespace gre
