#pragma once

// Maximum-entropy distributions of S_{q_alpha} (or R_{q_alpha}) under
// normalization and the q-escort energy constraint <E>_q = sum p^q E / Z_q.
//
// Stationarity of S_{q_alpha} - Phi sum p - Omega <E>_q reads, per level i,
//
//   c p_i^{(q-1)/alpha} - Phi - (q Omega dE_i / Z_q) p_i^{q-1} = 0,
//   c = q_alpha / (1 - q_alpha),  Phi = c Z_{q_alpha},  dE_i = E_i - <E>_q.
//
// With x = p^{(q-1)/alpha} / Z_{q_alpha} each level becomes the trinomial
// 1 - x + b x^alpha = 0, b = q(1-q)/(q+alpha-1) * Z_{q_alpha}^{alpha-1} / Z_q * Omega dE,
// and p_i = (x Z_{q_alpha})^{alpha/(q-1)}. The Z's and <E>_q depend on p, so
// the per-level solves are iterated to self-consistency.

#include <cstddef>
#include <optional>

#include "qtherm/deformation.hpp"
#include "qtherm/distribution.hpp"
#include "qtherm/entropy.hpp"

namespace qtherm {

struct SolverOptions {
    double damping = 0.5;  ///< weight of the new sweep in p <- (1-d) p + d p_new
    double tolerance = 1e-12;  ///< sup-norm change that ends the iteration
    std::size_t max_iterations = 10000;
    double omega_lo = -1e3;  ///< bracket for target-mean mode
    double omega_hi = 1e3;
};

/// Which functional is extremized.
enum class EntropyKind { tsallis, renyi };

struct MaxEntProblem {
    EnergySpectrum spectrum;
    DeformParam q;
    ScaleFactor alpha;  ///< must be > 0
    double omega = 0.0;  ///< Lagrange multiplier of the escort energy constraint
    /// When set, omega is ignored and found by bisection so that <E>_q matches.
    std::optional<double> target_mean;
    SolverOptions options{};
};

struct MaxEntSolution {
    Distribution probs;
    PartitionSum z_q;
    PartitionSum z_q_alpha;
    double phi;  ///< normalization multiplier of the stationarity equation
    double escort_mean;
    double omega;
    double stationarity_residual;  ///< max over levels, never clamped
    std::size_t iterations;
    bool converged;
};

/// b of the reduced trinomial equation for one level.
double trinomial_b(DeformParam q, ScaleFactor alpha, double omega, double delta_e, double z_q, double z_q_alpha);

/// Self-consistent MaxEnt distribution of S_{q_alpha}. For |q - 1| below the
/// additive threshold the Boltzmann-Gibbs solution p ~ exp(-Omega E) is returned.
/// Throws NonConvergence, NoRealRoot (with the level index) or DomainError; the
/// solver errors carry the last iterate.
MaxEntSolution solve_maxent(const MaxEntProblem& problem);

/// Same constraints with the Renyi entropy R_{q_alpha} extremized. Its gradient
/// differs from the Tsallis one by the factor 1/Z_{q_alpha}, which rescales b
/// by Z_{q_alpha} and makes Phi = q_alpha / (1 - q_alpha).
MaxEntSolution solve_maxent_renyi(const MaxEntProblem& problem);

/// alpha -> infinity: Shannon entropy under the q-escort constraint. Each sweep sets
///   p_i = exp[-S_1 - W((q-1) q e^{-(q-1) S_1} Omega dE_i / Z_q) / (q-1)]
/// which solves  -ln p_i - S_1 - (q Omega dE_i / Z_q) p_i^{q-1} = 0.
MaxEntSolution solve_maxent_shannon_limit(const EnergySpectrum& spectrum, DeformParam q, double omega,
                                          const SolverOptions& options = {});

/// Target-mean variant of solve_maxent_shannon_limit.
MaxEntSolution solve_maxent_shannon_limit_target(const EnergySpectrum& spectrum, DeformParam q, double target_mean,
                                                 const SolverOptions& options = {});

/// Max absolute residual of the least-squares line through (E_i, p_i^{1-q}).
/// Zero (to rounding) exactly when p belongs to the q-exponential family.
double q_exponential_affinity(const EnergySpectrum& spectrum, const Distribution& p, DeformParam q);

/// Cauchy-Schwarz bound Z_{(q+1)/2} <= sqrt(Z_q Z_1) = sqrt(Z_q).
struct PartitionBound {
    double lhs;  ///< Z_{(q+1)/2}
    double rhs;  ///< sqrt(Z_q)
};

PartitionBound partition_bound_check(const Distribution& p, DeformParam q);

}  // namespace qtherm
