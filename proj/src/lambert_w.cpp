#include "qtherm/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

double initial_guess(double x) {
    if (x < -0.25) {
        // Branch-point expansion in p = sqrt(2 (e x + 1)).
        const double p = std::sqrt(2.0 * std::fma(std::numbers::e, x, 1.0));
        return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
    }
    if (x < 3.0) {
        // Winitzki's approximation.
        const double l = std::log1p(x);
        return l * (1.0 - std::log1p(l) / (2.0 + l));
    }
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(double x) {
    if (std::isnan(x)) {
        throw InvalidArgument("lambert_w argument is NaN");
    }
    if (x < kLambertBranchPoint) {
        throw DomainError("lambert_w_domain", "principal Lambert W requires x >= -1/e");
    }
    if (x == kLambertBranchPoint) {
        return -1.0;
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return x;
    }

    // Halley iteration on f(w) = w e^w - x.
    double w = initial_guess(x);
    for (int iter = 0; iter < 64; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double w1 = w + 1.0;
        if (f == 0.0 || w1 == 0.0) {
            break;
        }
        const double step = f / (ew * w1 - 0.5 * (w + 2.0) * f / w1);
        if (!std::isfinite(step)) {
            break;
        }
        w -= step;
        if (w < -1.0) {
            w = -1.0;
        }
        if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) {
            break;
        }
    }
    return w;
}

}  // namespace qtherm
