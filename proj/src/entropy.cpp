#include "qtherm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

void require_defined_powers(const Distribution& p, double exponent) {
    if (exponent <= 0.0 && p.has_zero()) {
        throw DomainError("zero_probability",
                          "p^q is undefined for a zero entry when q <= 0 (q = " + std::to_string(exponent) + ")");
    }
}

// Z_q - 1 = sum p (p^{q-1} - 1), accurate for q near 1.
double shifted_partition_sum(const Distribution& p, double q) {
    double acc = 0.0;
    for (double pi : p.probs()) {
        if (pi > 0.0) {
            acc += pi * std::expm1((q - 1.0) * std::log(pi));
        }
    }
    return acc;
}

}  // namespace

PartitionSum partition_sum(const Distribution& p, DeformParam q) {
    require_defined_powers(p, q.value());
    double z = 0.0;
    for (double pi : p.probs()) {
        if (pi > 0.0) {
            z += std::pow(pi, q.value());
        }
    }
    return {z, q};
}

double shannon(const Distribution& p) {
    double h = 0.0;
    for (double pi : p.probs()) {
        if (pi > 0.0) {
            h -= pi * std::log(pi);
        }
    }
    return h;
}

double tsallis(const Distribution& p, DeformParam q) {
    if (q.is_additive()) {
        return shannon(p);
    }
    require_defined_powers(p, q.value());
    return shifted_partition_sum(p, q.value()) / q.coupling();
}

double renyi(const Distribution& p, DeformParam q) {
    if (q.is_additive()) {
        return shannon(p);
    }
    require_defined_powers(p, q.value());
    return std::log1p(shifted_partition_sum(p, q.value())) / q.coupling();
}

Distribution escort(const Distribution& p, double r) {
    if (!std::isfinite(r)) {
        throw InvalidArgument("escort exponent must be finite");
    }
    if (r == 1.0) {
        return p;
    }
    require_defined_powers(p, r);
    // Work with r ln p shifted by its maximum so that no weight underflows to
    // an all-zero vector.
    double top = -std::numeric_limits<double>::infinity();
    for (double pi : p.probs()) {
        if (pi > 0.0) {
            top = std::max(top, r * std::log(pi));
        }
    }
    std::vector<double> w(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            w[i] = std::exp(r * std::log(p[i]) - top);
        }
    }
    try {
        return Distribution::from_weights(std::move(w));
    } catch (const InvalidArgument&) {
        throw DomainError("escort_underflow", "escort weights are not normalizable");
    }
}

double escort_mean(const Distribution& p, std::span<const double> energies, double r) {
    if (energies.size() != p.size()) {
        throw InvalidArgument("energy spectrum has " + std::to_string(energies.size()) +
                              " levels but distribution has " + std::to_string(p.size()) + " entries");
    }
    const Distribution rho = escort(p, r);
    double mean = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        mean += rho[i] * energies[i];
    }
    return mean;
}

double hybrid(const Distribution& p, DeformParam q) {
    if (q.value() < 0.5) {
        throw DomainError("hybrid_q_below_half",
                          "hybrid entropy is defined only for q >= 1/2 (maximality fails below), got q = " +
                              std::to_string(q.value()));
    }
    const Distribution rho = escort(p, q.value());
    double info = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            info -= rho[i] * std::log(p[i]);
        }
    }
    if (q.is_additive()) {
        return info;
    }
    // ln_q(exp(info)) without forming exp(info).
    return std::expm1(q.coupling() * info) / q.coupling();
}

double avg_hybrid(const Distribution& p, DeformParam q) {
    if (q.value() < 0.0) {
        throw DomainError("avg_hybrid_q_negative", "average hybrid entropy requires q >= 0");
    }
    return hybrid(p, transform(q, ScaleFactor(2.0)));
}

HartleyMoments hartley_moments(const Distribution& p) {
    HartleyMoments m{0.0, 0.0};
    for (double pi : p.probs()) {
        if (pi > 0.0) {
            const double info = -std::log(pi);
            m.mean_info += pi * info;
            m.second_moment += pi * info * info;
        }
    }
    return m;
}

ScaleFactor quasi_additivity_alpha(const Distribution& p) {
    const HartleyMoments m = hartley_moments(p);
    if (m.second_moment == 0.0) {
        return ScaleFactor(1.0);
    }
    // Jensen gives <I>^2 <= <I^2>; the min only absorbs rounding at equality.
    const double ratio = std::min(1.0, m.mean_info * m.mean_info / m.second_moment);
    return ScaleFactor(1.0 + ratio);
}

QuasiAdditivity quasi_additivity_check(const Distribution& p, DeformParam q) {
    const ScaleFactor alpha = quasi_additivity_alpha(p);
    const double lhs = 2.0 * tsallis(p, q);
    const double rhs = tsallis(product(p, p), transform(q, alpha));
    return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace qtherm
