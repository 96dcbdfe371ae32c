#include "qtherm/deformation.hpp"

#include <cmath>
#include <string>

#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

bool outside_unit_interval(double q) { return q < 0.0 || q > 2.0; }

}  // namespace

DeformParam::DeformParam(double q) : q_(q) {
    if (!std::isfinite(q)) {
        throw InvalidArgument("q must be finite");
    }
}

bool DeformParam::is_additive() const noexcept { return std::abs(q_ - 1.0) < kAdditiveThreshold; }

ScaleFactor::ScaleFactor(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha)) {
        throw InvalidArgument("alpha must be finite");
    }
    if (alpha == 0.0) {
        throw InvalidArgument("alpha must be nonzero");
    }
}

HeatBath::HeatBath(std::int64_t n_particles) : n_(n_particles) {
    if (n_particles < 2) {
        throw InvalidArgument("heat bath needs at least 2 particles, got " + std::to_string(n_particles));
    }
}

FluctuatingBath::FluctuatingBath(double heat_capacity, double rel_fluct)
    : capacity_(heat_capacity), rel_fluct_(rel_fluct) {
    if (!std::isfinite(heat_capacity) || !std::isfinite(rel_fluct)) {
        throw InvalidArgument("bath parameters must be finite");
    }
    if (heat_capacity == 0.0) {
        throw InvalidArgument("heat capacity must be nonzero");
    }
    if (rel_fluct < 0.0) {
        throw InvalidArgument("relative fluctuation must be non-negative");
    }
}

DeformParam transform(DeformParam q, ScaleFactor alpha) {
    // Written as 1 + (q - 1)/alpha so that 1_alpha == 1 holds bit-exactly.
    return DeformParam(1.0 + (q.value() - 1.0) / alpha.value());
}

ScaleFactor compose(ScaleFactor alpha, ScaleFactor beta) {
    const double product = alpha.value() * beta.value();
    if (!std::isfinite(product) || product == 0.0) {
        throw InvalidArgument("composed scale factor is not finite and nonzero");
    }
    return ScaleFactor(product);
}

ScaleFactor inverse(ScaleFactor alpha) {
    const double inv = 1.0 / alpha.value();
    if (!std::isfinite(inv) || inv == 0.0) {
        throw InvalidArgument("inverse scale factor is not finite and nonzero");
    }
    return ScaleFactor(inv);
}

DualResult additive_dual(DeformParam q) {
    const double dual = 2.0 - q.value();
    return {DeformParam(dual), outside_unit_interval(dual)};
}

DualResult multiplicative_dual(DeformParam q) {
    if (q.value() == 0.0) {
        throw DomainError("zero_q", "multiplicative dual 1/q is undefined at q = 0");
    }
    const double dual = 1.0 / q.value();
    if (!std::isfinite(dual)) {
        throw DomainError("overflow", "multiplicative dual 1/q overflows");
    }
    return {DeformParam(dual), outside_unit_interval(dual)};
}

DeformParam heat_bath_q(const HeatBath& bath) {
    return heat_bath_q(static_cast<double>(bath.n_particles()));
}

DeformParam heat_bath_q(double n_particles) {
    if (!(n_particles > 1.0) || !std::isfinite(n_particles)) {
        throw InvalidArgument("particle count must be finite and > 1");
    }
    // N/(N-1) = 1 + 1/(N-1); the second form keeps the transform consistency exact.
    return DeformParam(1.0 + 1.0 / (n_particles - 1.0));
}

double rescale_bath(const HeatBath& bath, ScaleFactor alpha) {
    if (alpha.value() <= 0.0) {
        throw InvalidArgument("bath rescaling requires alpha > 0");
    }
    return alpha.value() * static_cast<double>(bath.n_particles() - 1) + 1.0;
}

DeformParam fluctuation_q(const FluctuatingBath& bath) {
    return DeformParam(1.0 - 1.0 / bath.heat_capacity() + bath.rel_fluct());
}

double rescaled_fluctuation(double rel_fluct, ScaleFactor alpha) {
    if (!std::isfinite(rel_fluct) || rel_fluct < 0.0) {
        throw InvalidArgument("relative fluctuation must be finite and non-negative");
    }
    if (alpha.value() <= 0.0) {
        throw InvalidArgument("fluctuation rescaling requires alpha > 0");
    }
    return rel_fluct / alpha.value();
}

}  // namespace qtherm
