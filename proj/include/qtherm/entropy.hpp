#pragma once

// Entropy functionals over finite distributions.
//
// Zero entries: 0^q := 0 for q > 0 and 0 ln 0 := 0. For q <= 0 a zero entry
// leaves Z_q undefined and raises DomainError.

#include <span>

#include "qtherm/deformation.hpp"
#include "qtherm/distribution.hpp"

namespace qtherm {

/// Z_q = sum_k p_k^q.
struct PartitionSum {
    double z;
    DeformParam q_used;
};

PartitionSum partition_sum(const Distribution& p, DeformParam q);

/// Tsallis entropy S_q = (Z_q - 1) / (1 - q); Shannon entropy on the additive branch.
double tsallis(const Distribution& p, DeformParam q);

/// -sum p ln p
double shannon(const Distribution& p);

/// Renyi entropy R_q = ln Z_q / (1 - q); Shannon entropy on the additive branch.
double renyi(const Distribution& p, DeformParam q);

/// Escort distribution rho_k(r) = p_k^r / sum_j p_j^r.
Distribution escort(const Distribution& p, double r);

/// <E>_r = sum_k rho_k(r) E_k. Throws InvalidArgument on length mismatch.
double escort_mean(const Distribution& p, std::span<const double> energies, double r);

/// Hybrid entropy D_q = ln_q exp(-sum_i rho_i(q) ln p_i), summed over the support.
/// Defined for q >= 1/2 only; smaller q raises DomainError("hybrid_q_below_half").
double hybrid(const Distribution& p, DeformParam q);

/// Average hybrid entropy A_q = D_{(q+1)/2}, i.e. hybrid at transform(q, 2).
/// Defined for q >= 0.
double avg_hybrid(const Distribution& p, DeformParam q);

/// Moments of the Hartley information I = -ln p.
struct HartleyMoments {
    double mean_info;      ///< <I>, equal to the Shannon entropy
    double second_moment;  ///< <I^2>
};

HartleyMoments hartley_moments(const Distribution& p);

/// alpha = 1 + <I>^2 / <I^2>, in [1, 2]. The delta distribution (0/0) maps to 1.
ScaleFactor quasi_additivity_alpha(const Distribution& p);

struct QuasiAdditivity {
    double lhs;  ///< 2 S_q(P)
    double rhs;  ///< S_{q_alpha}(P x P) with alpha = quasi_additivity_alpha(P)
    double gap;  ///< |lhs - rhs|
};

QuasiAdditivity quasi_additivity_check(const Distribution& p, DeformParam q);

}  // namespace qtherm
