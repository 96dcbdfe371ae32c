#pragma once

// Roots of the trinomial equation 1 - x + b x^alpha = 0.
//
// The root of interest is the one on the branch continuous in b with x(0) = 1.
// Writing b = g(x) = (x - 1) x^{-alpha}, that branch is the inverse of g on the
// monotone piece through x = 1:
//
//   alpha > 1      b <= (alpha-1)^(alpha-1) / alpha^alpha,  x in (0, alpha/(alpha-1)]
//   0 < alpha <= 1 every b (alpha = 1: b < 1),               x in (0, inf)
//   alpha < 0      b >= -|alpha|^|alpha| / (1+|alpha|)^(1+|alpha|),  x >= |alpha|/(1+|alpha|)
//
// Around b = 0 the root has the Lagrange series
//   x = 1 + sum_{n>=1} C(alpha n, n-1) b^n / n
// with radius |alpha-1|^(alpha-1) / |alpha|^alpha (1 at alpha = 1).

#include <cstddef>

#include "qtherm/deformation.hpp"

namespace qtherm {

struct TrinomialProblem {
    ScaleFactor alpha;
    double b;
};

/// How solve_trinomial produced its answer.
enum class TrinomialMethod { trivial, linear, half_quadratic, quadratic, series_newton, bracketed };

struct TrinomialRoot {
    double x;
    TrinomialMethod method;
};

/// Root on the x(0) = 1 branch. Throws NoRealRoot when b lies outside the
/// branch's range (including the alpha = 1 pole at b = 1).
double solve_trinomial(const TrinomialProblem& p);

/// As solve_trinomial, also reporting the method used.
TrinomialRoot solve_trinomial_detailed(const TrinomialProblem& p);

/// 1 - x + b x^alpha
double trinomial_residual(const TrinomialProblem& p, double x);

/// Radius of convergence of the Lagrange series in b.
double series_radius(ScaleFactor alpha);

/// Fraction of the radius inside which solve_trinomial seeds from the series.
inline constexpr double kSeriesSafety = 0.9;

/// n-th series coefficient C(alpha n, n-1) / n, n >= 1.
double series_coefficient(ScaleFactor alpha, std::size_t n);

/// Generalized binomial coefficient C(a, k) for real a and integer k >= 0.
double generalized_binomial(double a, std::size_t k);

struct SeriesSum {
    double x;
    std::size_t terms_used;
};

/// Partial sum of the Lagrange series. Stops once a term's magnitude falls
/// below `tol` (that term is included) or after `n_max` terms. Throws
/// DivergentSeries when the term magnitude grows three times in a row.
SeriesSum trinomial_series(ScaleFactor alpha, double b, std::size_t n_max, double tol);

}  // namespace qtherm
