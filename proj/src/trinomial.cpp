#include "qtherm/trinomial.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this order the multiplicative formula is used; it is exact for integer
// arguments and avoids the rounding of exp(lgamma(...)).
constexpr std::size_t kDirectBinomialOrder = 64;

struct SignedLog {
    double log_abs;
    int sign;  // 0 means the value is exactly zero
};

bool is_integer(double v) { return std::floor(v) == v; }

// log |Gamma(z)| and the sign of Gamma(z) for z not a nonpositive integer.
SignedLog log_gamma(double z) {
    const double lg = std::lgamma(z);
    if (z > 0.0) {
        return {lg, 1};
    }
    const auto flips = static_cast<long long>(std::ceil(-z));
    return {lg, flips % 2 == 0 ? 1 : -1};
}

SignedLog log_binomial(double a, std::size_t k) {
    const double kd = static_cast<double>(k);
    if (a < 0.0) {
        // C(a, k) = (-1)^k C(k - a - 1, k), with a positive upper argument.
        SignedLog r = log_binomial(kd - a - 1.0, k);
        if (k % 2 == 1) {
            r.sign = -r.sign;
        }
        return r;
    }
    const double d = a - kd + 1.0;
    if (d <= 0.0 && is_integer(d)) {
        return {-std::numeric_limits<double>::infinity(), 0};
    }
    const SignedLog tail = log_gamma(d);
    return {std::lgamma(a + 1.0) - std::lgamma(kd + 1.0) - tail.log_abs, tail.sign};
}

// Term C(alpha n, n-1) b^n / n as a signed log, or sign 0 for a structural zero.
SignedLog log_series_term(double alpha, std::size_t n, double b) {
    SignedLog c = log_binomial(alpha * static_cast<double>(n), n - 1);
    if (c.sign == 0) {
        return c;
    }
    c.log_abs += static_cast<double>(n) * std::log(std::abs(b)) - std::log(static_cast<double>(n));
    if (b < 0.0 && n % 2 == 1) {
        c.sign = -c.sign;
    }
    return c;
}

[[noreturn]] void no_root(double alpha, double b, const std::string& why) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "1 - x + b x^alpha = 0 has no root on the x(0) = 1 branch for alpha = " << alpha << ", b = " << b
        << ": " << why;
    throw NoRealRoot(alpha, b, NoRealRoot::kNoLevel, msg.str());
}

double f_value(double alpha, double b, double x) { return 1.0 - x + b * std::pow(x, alpha); }

double f_slope(double alpha, double b, double x) { return -1.0 + b * alpha * std::pow(x, alpha - 1.0); }

// Newton iteration kept inside [lo, hi], where f(lo) >= 0 >= f(hi) (f is
// decreasing through the branch root). Falls back to bisection whenever the
// Newton step leaves the bracket.
double safeguarded_newton(double alpha, double b, double lo, double hi, std::optional<double> seed) {
    double x = (seed && *seed > lo && *seed < hi) ? *seed : 0.5 * (lo + hi);
    for (int iter = 0; iter < 400; ++iter) {
        const double fx = f_value(alpha, b, x);
        if (fx == 0.0) {
            return x;
        }
        if (fx > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double slope = f_slope(alpha, b, x);
        double next = x - fx / slope;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
        }
        const bool step_small = std::abs(next - x) <= 2.0 * kEps * std::abs(x);
        x = next;
        if (step_small || hi - lo <= 2.0 * kEps * hi) {
            break;
        }
    }
    return x;
}

std::optional<double> series_seed(double alpha, double b) {
    const ScaleFactor a(alpha);
    if (std::abs(b) >= kSeriesSafety * series_radius(a)) {
        return std::nullopt;
    }
    try {
        return trinomial_series(a, b, 400, 1e-17).x;
    } catch (const DivergentSeries&) {
        return std::nullopt;
    }
}

// Upper bracket for roots above 1 on branches that are unbounded above.
double expand_upper(double alpha, double b, double& lo) {
    double hi = 2.0;
    while (f_value(alpha, b, hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi) || !std::isfinite(f_value(alpha, b, hi))) {
            no_root(alpha, b, "root exceeds the floating-point range");
        }
    }
    return hi;
}

double general_root(double alpha, double b, TrinomialMethod& method) {
    double lo = 0.0;
    double hi = 1.0;
    if (alpha > 1.0) {
        const double b_max = series_radius(ScaleFactor(alpha));
        if (b > b_max) {
            no_root(alpha, b, "b exceeds (alpha-1)^(alpha-1)/alpha^alpha");
        }
        if (b > 0.0) {
            lo = 1.0;
            hi = alpha / (alpha - 1.0);
        }
    } else if (alpha > 0.0) {
        if (b > 0.0) {
            lo = 1.0;
            hi = expand_upper(alpha, b, lo);
        }
    } else {
        const double a = -alpha;
        const double b_min = -series_radius(ScaleFactor(alpha));
        if (b < b_min) {
            no_root(alpha, b, "b below -|alpha|^|alpha|/(1+|alpha|)^(1+|alpha|)");
        }
        if (b > 0.0) {
            lo = 1.0;
            hi = expand_upper(alpha, b, lo);
        } else {
            lo = a / (1.0 + a);
        }
    }
    const std::optional<double> seed = series_seed(alpha, b);
    method = seed ? TrinomialMethod::series_newton : TrinomialMethod::bracketed;
    return safeguarded_newton(alpha, b, lo, hi, seed);
}

}  // namespace

double generalized_binomial(double a, std::size_t k) {
    if (k < kDirectBinomialOrder) {
        double c = 1.0;
        for (std::size_t j = 0; j < k; ++j) {
            c = c * (a - static_cast<double>(j)) / static_cast<double>(j + 1);
        }
        return c;
    }
    const SignedLog c = log_binomial(a, k);
    return c.sign == 0 ? 0.0 : c.sign * std::exp(c.log_abs);
}

double series_coefficient(ScaleFactor alpha, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("series coefficients start at n = 1");
    }
    return generalized_binomial(alpha.value() * static_cast<double>(n), n - 1) / static_cast<double>(n);
}

double series_radius(ScaleFactor alpha) {
    const double a = alpha.value();
    if (a == 1.0) {
        return 1.0;
    }
    return std::pow(std::abs(a - 1.0), a - 1.0) / std::pow(std::abs(a), a);
}

SeriesSum trinomial_series(ScaleFactor alpha, double b, std::size_t n_max, double tol) {
    if (!std::isfinite(b)) {
        throw InvalidArgument("b must be finite");
    }
    if (n_max < 1) {
        throw InvalidArgument("n_max must be at least 1");
    }
    if (b == 0.0) {
        return {1.0, 0};
    }
    const double a = alpha.value();
    double sum = 1.0;
    double previous = 0.0;
    int growth = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        double term = 0.0;
        if (n - 1 < kDirectBinomialOrder) {
            term = series_coefficient(alpha, n) * std::pow(b, static_cast<double>(n));
        } else {
            const SignedLog t = log_series_term(a, n, b);
            term = t.sign == 0 ? 0.0 : t.sign * std::exp(t.log_abs);
        }
        if (term == 0.0) {
            // structural zero of C(alpha n, n-1); says nothing about convergence
            continue;
        }
        sum += term;
        const double mag = std::abs(term);
        if (!std::isfinite(sum)) {
            throw DivergentSeries("trinomial series overflowed");
        }
        if (mag < tol) {
            return {sum, n};
        }
        growth = (previous > 0.0 && mag > previous) ? growth + 1 : 0;
        if (growth >= 3) {
            std::ostringstream msg;
            msg << "trinomial series diverges for alpha = " << a << ", b = " << b << " (radius "
                << series_radius(alpha) << ")";
            throw DivergentSeries(msg.str());
        }
        previous = mag;
    }
    return {sum, n_max};
}

double trinomial_residual(const TrinomialProblem& p, double x) { return f_value(p.alpha.value(), p.b, x); }

TrinomialRoot solve_trinomial_detailed(const TrinomialProblem& p) {
    const double alpha = p.alpha.value();
    const double b = p.b;
    if (!std::isfinite(b)) {
        throw InvalidArgument("b must be finite");
    }
    if (b == 0.0) {
        return {1.0, TrinomialMethod::trivial};
    }
    if (alpha == 1.0) {
        if (b >= 1.0) {
            no_root(alpha, b, "linear case needs b < 1");
        }
        return {1.0 / (1.0 - b), TrinomialMethod::linear};
    }
    if (alpha == 0.5) {
        // s = sqrt(x) solves s^2 - b s - 1 = 0; pick the positive root, written
        // to avoid cancellation for either sign of b.
        const double disc = std::hypot(b, 2.0);
        const double s = b >= 0.0 ? 0.5 * (b + disc) : 2.0 / (disc - b);
        return {s * s, TrinomialMethod::half_quadratic};
    }
    if (alpha == 2.0) {
        if (b > 0.25) {
            no_root(alpha, b, "negative discriminant 1 - 4b");
        }
        // (1 - sqrt(1-4b)) / (2b), rationalized.
        return {2.0 / (1.0 + std::sqrt(1.0 - 4.0 * b)), TrinomialMethod::quadratic};
    }
    TrinomialMethod method = TrinomialMethod::bracketed;
    const double x = general_root(alpha, b, method);
    return {x, method};
}

double solve_trinomial(const TrinomialProblem& p) { return solve_trinomial_detailed(p).x; }

}  // namespace qtherm
