#include "qtherm/qalgebra.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) {
        throw InvalidArgument(std::string(name) + " must be finite");
    }
}

double checked_result(double r, const char* op) {
    if (!std::isfinite(r)) {
        throw DomainError("overflow", std::string(op) + " result is not finite");
    }
    return r;
}

// [1 + t]^{1/(1-q)} evaluated as exp(log1p(t)/(1-q)), which stays accurate for
// q close to 1. `t` is the bracket minus one. Caller guarantees 1 + t > 0.
double deformed_power(double t, double coupling) { return std::exp(std::log1p(t) / coupling); }

// x^{1-q} - 1 without cancellation.
double shifted_power(double x, double coupling) { return std::expm1(coupling * std::log(x)); }

// Each side of an identity check: value, whether a cutoff produced it, or the
// error that prevented evaluating it.
struct Side {
    double value = kNaN;
    bool cut = false;
    std::exception_ptr error;

    bool ok() const { return !error; }
};

template <class F>
Side evaluate(F&& f) {
    Side s;
    try {
        f(s);
    } catch (const DomainError&) {
        s.value = kNaN;
        s.error = std::current_exception();
    }
    return s;
}

IdentityCheck combine(const Side& lhs, const Side& rhs) {
    if (!lhs.ok() && !rhs.ok()) {
        std::rethrow_exception(lhs.error);
    }
    if (lhs.ok() != rhs.ok() || lhs.cut != rhs.cut) {
        return {lhs.value, rhs.value, IdentityOutcome::domain_mismatch};
    }
    return {lhs.value, rhs.value, compare_sides(lhs.value, rhs.value)};
}

}  // namespace

double q_add(double x, double y, DeformParam q) {
    require_finite(x, "x");
    require_finite(y, "y");
    if (q.is_additive()) {
        return checked_result(x + y, "q_add");
    }
    return checked_result(x + y + q.coupling() * x * y, "q_add");
}

double q_sub(double x, double y, DeformParam q) {
    require_finite(x, "x");
    require_finite(y, "y");
    if (q.is_additive()) {
        return checked_result(x - y, "q_sub");
    }
    const double shift = q.coupling() * y;
    const double denom = 1.0 + shift;
    if (std::abs(denom) <= 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(shift))) {
        throw DomainError("pole", "q_sub has a pole at y = 1/(q-1)");
    }
    return checked_result((x - y) / denom, "q_sub");
}

double q_mul(double x, double y, DeformParam q) {
    require_finite(x, "x");
    require_finite(y, "y");
    if (x <= 0.0 || y <= 0.0) {
        throw DomainError("nonpositive_operand", "q_mul requires positive operands");
    }
    if (q.is_additive()) {
        return checked_result(x * y, "q_mul");
    }
    const double c = q.coupling();
    const double t = shifted_power(x, c) + shifted_power(y, c);
    if (1.0 + t <= 0.0) {
        if (c > 0.0) {
            return 0.0;
        }
        throw DomainError("bracket", "q_mul bracket is nonpositive for q > 1");
    }
    return checked_result(deformed_power(t, c), "q_mul");
}

double q_div(double x, double y, DeformParam q) {
    require_finite(x, "x");
    require_finite(y, "y");
    if (x <= 0.0 || y <= 0.0) {
        throw DomainError("nonpositive_operand", "q_div requires positive operands");
    }
    if (q.is_additive()) {
        return checked_result(x / y, "q_div");
    }
    const double c = q.coupling();
    const double t = shifted_power(x, c) - shifted_power(y, c);
    if (1.0 + t <= 0.0) {
        throw DomainError("bracket", "q_div bracket is nonpositive");
    }
    return checked_result(deformed_power(t, c), "q_div");
}

double q_exp(double x, DeformParam q) {
    require_finite(x, "x");
    if (q.is_additive()) {
        return checked_result(std::exp(x), "q_exp");
    }
    const double c = q.coupling();
    const double t = c * x;
    if (1.0 + t <= 0.0) {
        if (c > 0.0) {
            return 0.0;
        }
        throw DomainError("bracket", "q_exp diverges: 1 + (1-q) x <= 0 with q > 1");
    }
    return checked_result(deformed_power(t, c), "q_exp");
}

double q_log(double x, DeformParam q) {
    require_finite(x, "x");
    if (x <= 0.0) {
        throw DomainError("nonpositive_argument", "q_log requires x > 0");
    }
    if (q.is_additive()) {
        return std::log(x);
    }
    const double c = q.coupling();
    return checked_result(shifted_power(x, c) / c, "q_log");
}

IdentityOutcome compare_sides(double lhs, double rhs, double tol) {
    if (lhs == rhs) {
        return IdentityOutcome::agree;
    }
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
        return IdentityOutcome::disagree;
    }
    return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(lhs)) ? IdentityOutcome::agree
                                                                      : IdentityOutcome::disagree;
}

IdentityCheck dist_add(double x, double y, DeformParam q, ScaleFactor alpha) {
    const double a = alpha.value();
    const DeformParam qa = transform(q, alpha);
    const Side lhs = evaluate([&](Side& s) { s.value = a * q_add(x, y, q); });
    const Side rhs = evaluate([&](Side& s) { s.value = q_add(a * x, a * y, qa); });
    return combine(lhs, rhs);
}

IdentityCheck dist_sub(double x, double y, DeformParam q, ScaleFactor alpha) {
    const double a = alpha.value();
    const DeformParam qa = transform(q, alpha);
    const Side lhs = evaluate([&](Side& s) { s.value = a * q_sub(x, y, q); });
    const Side rhs = evaluate([&](Side& s) { s.value = q_sub(a * x, a * y, qa); });
    return combine(lhs, rhs);
}

IdentityCheck dist_mul(double x, double y, DeformParam q, ScaleFactor alpha) {
    const double a = alpha.value();
    const DeformParam qa = transform(q, alpha);
    const Side lhs = evaluate([&](Side& s) {
        const double inner = q_mul(x, y, q);
        s.cut = inner == 0.0;
        s.value = std::pow(inner, a);
    });
    const Side rhs = evaluate([&](Side& s) {
        s.value = q_mul(std::pow(x, a), std::pow(y, a), qa);
        s.cut = s.value == 0.0;
        if (s.cut) {
            s.value = std::pow(0.0, a);
        }
    });
    return combine(lhs, rhs);
}

IdentityCheck dist_div(double x, double y, DeformParam q, ScaleFactor alpha) {
    const double a = alpha.value();
    const DeformParam qa = transform(q, alpha);
    const Side lhs = evaluate([&](Side& s) { s.value = std::pow(q_div(x, y, q), a); });
    const Side rhs = evaluate([&](Side& s) { s.value = q_div(std::pow(x, a), std::pow(y, a), qa); });
    return combine(lhs, rhs);
}

IdentityCheck exp_scaling(double x, DeformParam q, ScaleFactor alpha) {
    const double a = alpha.value();
    const DeformParam qa = transform(q, alpha);
    const Side lhs = evaluate([&](Side& s) {
        const double inner = q_exp(x, q);
        s.cut = inner == 0.0;
        s.value = std::pow(inner, a);
    });
    const Side rhs = evaluate([&](Side& s) {
        s.value = q_exp(a * x, qa);
        s.cut = s.value == 0.0;
        if (s.cut) {
            s.value = std::pow(0.0, a);
        }
    });
    return combine(lhs, rhs);
}

IdentityCheck log_scaling(double x, DeformParam q, ScaleFactor alpha) {
    const double a = alpha.value();
    const DeformParam qa = transform(q, alpha);
    const Side lhs = evaluate([&](Side& s) { s.value = a * q_log(x, q); });
    const Side rhs = evaluate([&](Side& s) { s.value = q_log(std::pow(x, a), qa); });
    return combine(lhs, rhs);
}

}  // namespace qtherm
