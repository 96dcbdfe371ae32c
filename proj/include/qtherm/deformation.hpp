#pragma once

// Nonadditivity index q, the rescaling group q -> q_alpha and the physical
// parameter maps (finite heat bath, fluctuating temperature).

#include <cstdint>

namespace qtherm {

/// Below this distance from 1 every q-deformed quantity uses its q = 1 branch.
inline constexpr double kAdditiveThreshold = 1e-9;

/// Nonadditivity index q. Any finite real.
class DeformParam {
public:
    explicit DeformParam(double q);

    double value() const noexcept { return q_; }
    /// |q - 1| < kAdditiveThreshold
    bool is_additive() const noexcept;
    /// 1 - q
    double coupling() const noexcept { return 1.0 - q_; }

    friend bool operator==(DeformParam, DeformParam) = default;

private:
    double q_;
};

/// Group parameter alpha. Finite and nonzero.
class ScaleFactor {
public:
    explicit ScaleFactor(double alpha);

    double value() const noexcept { return alpha_; }

    friend bool operator==(ScaleFactor, ScaleFactor) = default;

private:
    double alpha_;
};

/// Bath of N >= 2 particles.
class HeatBath {
public:
    explicit HeatBath(std::int64_t n_particles);

    std::int64_t n_particles() const noexcept { return n_; }

private:
    std::int64_t n_;
};

/// Reservoir with heat capacity C != 0 and relative temperature fluctuation
/// (delta beta)^2 / <beta>^2 >= 0.
class FluctuatingBath {
public:
    FluctuatingBath(double heat_capacity, double rel_fluct);

    double heat_capacity() const noexcept { return capacity_; }
    double rel_fluct() const noexcept { return rel_fluct_; }

private:
    double capacity_;
    double rel_fluct_;
};

/// A transformed index together with a non-fatal flag raised when the
/// result leaves [0, 2].
struct DualResult {
    DeformParam q;
    bool outside_unit_interval;
};

/// q_alpha = (q + alpha - 1) / alpha, i.e. (q_alpha - 1) = (q - 1) / alpha.
DeformParam transform(DeformParam q, ScaleFactor alpha);

/// Group product alpha * beta.
ScaleFactor compose(ScaleFactor alpha, ScaleFactor beta);

/// Group inverse 1 / alpha.
ScaleFactor inverse(ScaleFactor alpha);

/// q -> 2 - q (alpha = -1).
DualResult additive_dual(DeformParam q);

/// q -> 1 / q (alpha = -q). Throws DomainError for q = 0.
DualResult multiplicative_dual(DeformParam q);

/// q(N) = N / (N - 1).
DeformParam heat_bath_q(const HeatBath& bath);

/// q for a fractional particle count N > 1; used to check rescale_bath.
DeformParam heat_bath_q(double n_particles);

/// N_alpha = alpha (N - 1) + 1. Real valued, never rounded. Requires alpha > 0.
double rescale_bath(const HeatBath& bath, ScaleFactor alpha);

/// q = 1 - 1/C + (delta beta)^2 / <beta>^2.
DeformParam fluctuation_q(const FluctuatingBath& bath);

/// Relative fluctuation of the rescaled system when 1/C is negligible:
/// rel_fluct / alpha. Requires alpha > 0 and rel_fluct >= 0.
double rescaled_fluctuation(double rel_fluct, ScaleFactor alpha);

}  // namespace qtherm
