#pragma once

namespace qtherm {

/// -1/e, the branch point of the Lambert W function.
inline constexpr double kLambertBranchPoint = -0.36787944117144233;

/// Principal branch W0 of the Lambert W function, the solution w >= -1 of
/// w e^w = x. Defined for x >= -1/e; smaller x raises DomainError.
double lambert_w(double x);

}  // namespace qtherm
