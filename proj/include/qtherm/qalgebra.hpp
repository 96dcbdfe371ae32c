#pragma once

// q-deformed arithmetic:
//   x (+)_q y = x + y + (1-q) x y
//   x (-)_q y = (x - y) / (1 + (1-q) y)
//   x (*)_q y = [x^{1-q} + y^{1-q} - 1]^{1/(1-q)}
//   x (/)_q y = [x^{1-q} - y^{1-q} + 1]^{1/(1-q)}
//   exp_q x   = [1 + (1-q) x]^{1/(1-q)}
//   ln_q x    = (x^{1-q} - 1) / (1-q)
// together with the distributive laws that tie the q-operations to the
// q_alpha-operations.
//
// For |q - 1| < kAdditiveThreshold every function takes its ordinary branch.
// Cutoff: exp_q and (*)_q return 0 when their bracket is <= 0 and q < 1; for
// q > 1 the same situation is a DomainError. (/)_q never cuts off.

#include "qtherm/deformation.hpp"

namespace qtherm {

double q_add(double x, double y, DeformParam q);
double q_sub(double x, double y, DeformParam q);
double q_mul(double x, double y, DeformParam q);
double q_div(double x, double y, DeformParam q);
double q_exp(double x, DeformParam q);
double q_log(double x, DeformParam q);

/// Outcome of evaluating both sides of an identity independently.
enum class IdentityOutcome {
    agree,
    disagree,
    /// one side is cut off or outside its domain while the other is not
    domain_mismatch,
};

struct IdentityCheck {
    double lhs;
    double rhs;
    IdentityOutcome outcome;

    bool holds() const noexcept { return outcome == IdentityOutcome::agree; }
};

/// Relative tolerance used by the identity checks: |lhs - rhs| <= tol * max(1, |lhs|).
inline constexpr double kIdentityTolerance = 1e-12;

/// alpha (x (+)_q y)  vs  (alpha x) (+)_{q_alpha} (alpha y)
IdentityCheck dist_add(double x, double y, DeformParam q, ScaleFactor alpha);
/// alpha (x (-)_q y)  vs  (alpha x) (-)_{q_alpha} (alpha y)
IdentityCheck dist_sub(double x, double y, DeformParam q, ScaleFactor alpha);
/// (x (*)_q y)^alpha  vs  x^alpha (*)_{q_alpha} y^alpha
IdentityCheck dist_mul(double x, double y, DeformParam q, ScaleFactor alpha);
/// (x (/)_q y)^alpha  vs  x^alpha (/)_{q_alpha} y^alpha
IdentityCheck dist_div(double x, double y, DeformParam q, ScaleFactor alpha);
/// (exp_q x)^alpha  vs  exp_{q_alpha}(alpha x)
IdentityCheck exp_scaling(double x, DeformParam q, ScaleFactor alpha);
/// alpha ln_q x  vs  ln_{q_alpha}(x^alpha)
IdentityCheck log_scaling(double x, DeformParam q, ScaleFactor alpha);

/// Shared comparison rule of the identity checks.
IdentityOutcome compare_sides(double lhs, double rhs, double tol = kIdentityTolerance);

}  // namespace qtherm
