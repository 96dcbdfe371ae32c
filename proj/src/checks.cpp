#include "qtherm/checks.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "qtherm/deformation.hpp"
#include "qtherm/entropy.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/lambert_w.hpp"
#include "qtherm/maxent.hpp"
#include "qtherm/qalgebra.hpp"
#include "qtherm/trinomial.hpp"

namespace qtherm::checks {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double nonzero(Rng& rng, double lo, double hi) {
    double v = 0.0;
    while (std::abs(v) < 1e-3) {
        v = uniform(rng, lo, hi);
    }
    return v;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

Distribution random_distribution(Rng& rng, std::size_t n) {
    std::vector<double> w(n);
    for (double& x : w) {
        x = -std::log(uniform(rng, 1e-12, 1.0));
    }
    return Distribution::from_weights(std::move(w));
}

std::size_t random_size(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

class Tally {
public:
    Tally(std::string suite, std::string name, double tol, const CheckOptions& opt)
        : r_{std::move(suite), std::move(name), 0, 0, 0.0, tol * opt.tolerance_scale} {}

    void error(double err) {
        ++r_.trials;
        if (std::isnan(err)) {
            ++r_.failures;
            return;
        }
        r_.worst = std::max(r_.worst, err);
        if (!(err <= r_.tolerance)) {
            ++r_.failures;
        }
    }

    void truth(bool ok) {
        ++r_.trials;
        if (!ok) {
            ++r_.failures;
        }
    }

    PropertyResult result() const { return r_; }

private:
    PropertyResult r_;
};

// Both sides undefined counts as agreement, one undefined side as a failure.
template <class L, class R>
void compare_defined(Tally& t, L lhs, R rhs) {
    std::optional<double> a;
    std::optional<double> b;
    try {
        a = lhs();
    } catch (const DomainError&) {
    }
    try {
        b = rhs();
    } catch (const DomainError&) {
    }
    if (a && b) {
        t.error(rel_err(*a, *b));
    } else {
        t.truth(!a && !b);
    }
}

template <class F>
bool law_holds(F check) {
    try {
        return check().holds();
    } catch (const DomainError&) {
        return true;  // rethrown only when both sides are undefined
    }
}

}  // namespace

std::vector<PropertyResult> group_suite(const CheckOptions& opt) {
    Rng rng(opt.seed);
    const std::string s = "group";
    Tally composition(s, "composition (q_a)_b = q_ab", 1e-12, opt);
    Tally associativity(s, "associativity (q_a)_bc = (q_ab)_c", 1e-12, opt);
    Tally neutral(s, "neutral element q_1 = q", 1e-12, opt);
    Tally inverse_el(s, "inverse (q_a)_{1/a} = q", 1e-12, opt);
    Tally invariant(s, "invariant 1_a = 1", 1e-12, opt);
    Tally sign(s, "sign(q_a - 1) = sign(q - 1) for a > 0", 0.0, opt);
    Tally add_dual(s, "additive dual is an involution", 1e-15, opt);
    Tally mul_dual(s, "multiplicative dual is an involution", 1e-15, opt);
    Tally bath(s, "q(N_a) = q(N)_a and q(N)_a > 1", 1e-12, opt);

    for (int t = 0; t < 10000; ++t) {
        const DeformParam q(uniform(rng, -2.0, 4.0));
        const ScaleFactor a(nonzero(rng, -4.0, 4.0));
        const ScaleFactor b(nonzero(rng, -4.0, 4.0));
        const ScaleFactor c(nonzero(rng, -4.0, 4.0));

        const double ab = transform(q, compose(a, b)).value();
        composition.error(rel_err(transform(transform(q, a), b).value(), ab));
        composition.error(rel_err(transform(transform(q, b), a).value(), ab));

        const double abc = transform(q, compose(compose(a, b), c)).value();
        associativity.error(rel_err(transform(transform(q, a), compose(b, c)).value(), abc));
        associativity.error(rel_err(transform(transform(q, compose(a, b)), c).value(), abc));

        neutral.error(rel_err(transform(q, ScaleFactor(1.0)).value(), q.value()));
        inverse_el.error(rel_err(transform(transform(q, a), inverse(a)).value(), q.value()));
        invariant.error(std::abs(transform(DeformParam(1.0), a).value() - 1.0));

        const ScaleFactor pos(std::abs(a.value()));
        const double before = q.value() - 1.0;
        const double after = transform(q, pos).value() - 1.0;
        sign.truth((before > 0) == (after > 0) && (before < 0) == (after < 0));

        add_dual.error(std::abs(additive_dual(additive_dual(q).q).q.value() - q.value()));
        if (q.value() != 0.0) {
            // 1/(1/q) is exact to within one rounding of each division.
            mul_dual.error(rel_err(multiplicative_dual(multiplicative_dual(q).q).q.value(), q.value()));
        }

        const HeatBath hb(static_cast<std::int64_t>(random_size(rng, 2, 100000)));
        const double n_alpha = rescale_bath(hb, pos);
        const DeformParam rescaled = transform(heat_bath_q(hb), pos);
        bath.error(rel_err(heat_bath_q(n_alpha).value(), rescaled.value()));
        bath.truth(rescaled.value() > 1.0);
    }
    return {composition.result(), associativity.result(), neutral.result(), inverse_el.result(),
            invariant.result(), sign.result(),        add_dual.result(), mul_dual.result(),
            bath.result()};
}

std::vector<PropertyResult> algebra_suite(const CheckOptions& opt) {
    Rng rng(opt.seed + 1);
    const std::string s = "algebra";
    Tally add_sub(s, "(x (+) y) (-) y = x", 1e-12, opt);
    Tally mul_div(s, "(x (*) y) (/) y = x", 1e-12, opt);
    Tally exp_add(s, "e_q(x) e_q(y) = e_q(x (+) y)", 1e-12, opt);
    Tally exp_mul(s, "e_q(x + y) = e_q(x) (*) e_q(y)", 1e-12, opt);
    Tally log_add(s, "ln_q(xy) = ln_q x (+) ln_q y", 1e-12, opt);
    Tally log_mul(s, "ln_q x + ln_q y = ln_q(x (*) y)", 1e-12, opt);
    Tally laws(s, "generalized distributive laws (+ - * /)", 0.0, opt);
    Tally scaling(s, "exp/log scaling identities", 0.0, opt);
    Tally comm(s, "(+) and (*) commutative and associative", 1e-12, opt);
    Tally limit(s, "q -> 1 limit of all operations", 1e-6, opt);
    Tally witness(s, "plain distributivity fails at q = 0.5", 0.0, opt);

    for (int t = 0; t < 10000; ++t) {
        const DeformParam q(uniform(rng, 0.2, 1.8));
        const ScaleFactor a(nonzero(rng, -3.0, 3.0));
        const double x = uniform(rng, -0.5, 0.5);
        const double y = uniform(rng, -0.5, 0.5);
        const double z = uniform(rng, -0.5, 0.5);
        const double u = uniform(rng, 0.5, 2.0);
        const double v = uniform(rng, 0.5, 2.0);
        const double w = uniform(rng, 0.5, 2.0);

        add_sub.error(rel_err(q_sub(q_add(x, y, q), y, q), x));
        mul_div.error(rel_err(q_div(q_mul(u, v, q), v, q), u));

        exp_add.error(rel_err(q_exp(x, q) * q_exp(y, q), q_exp(q_add(x, y, q), q)));
        exp_mul.error(rel_err(q_exp(x + y, q), q_mul(q_exp(x, q), q_exp(y, q), q)));
        log_add.error(rel_err(q_log(u * v, q), q_add(q_log(u, q), q_log(v, q), q)));
        log_mul.error(rel_err(q_log(u, q) + q_log(v, q), q_log(q_mul(u, v, q), q)));

        laws.truth(law_holds([&] { return dist_add(x, y, q, a); }));
        laws.truth(law_holds([&] { return dist_sub(x, y, q, a); }));
        laws.truth(law_holds([&] { return dist_mul(u, v, q, a); }));
        laws.truth(law_holds([&] { return dist_div(u, v, q, a); }));
        scaling.truth(law_holds([&] { return exp_scaling(x, q, a); }));
        scaling.truth(law_holds([&] { return log_scaling(u, q, a); }));

        comm.error(rel_err(q_add(x, y, q), q_add(y, x, q)));
        comm.error(rel_err(q_add(q_add(x, y, q), z, q), q_add(x, q_add(y, z, q), q)));
        comm.error(rel_err(q_mul(u, v, q), q_mul(v, u, q)));
        compare_defined(
            comm, [&] { return q_mul(q_mul(u, v, q), w, q); }, [&] { return q_mul(u, q_mul(v, w, q), q); });

        for (const double eps : {1e-8, -1e-8}) {
            const DeformParam near(1.0 + eps);
            limit.error(std::abs(q_add(x, y, near) - (x + y)));
            limit.error(std::abs(q_sub(x, y, near) - (x - y)));
            limit.error(std::abs(q_mul(u, v, near) - u * v));
            limit.error(std::abs(q_div(u, v, near) - u / v));
            limit.error(std::abs(q_exp(x, near) - std::exp(x)));
            limit.error(std::abs(q_log(u, near) - std::log(u)));
        }
    }
    const DeformParam half(0.5);
    witness.truth(2.0 * q_add(1.0, 1.0, half) != q_add(2.0, 2.0, half));
    return {add_sub.result(), mul_div.result(), exp_add.result(), exp_mul.result(), log_add.result(),
            log_mul.result(), laws.result(),    scaling.result(), comm.result(),    limit.result(),
            witness.result()};
}

std::vector<PropertyResult> entropy_suite(const CheckOptions& opt) {
    Rng rng(opt.seed + 2);
    const std::string s = "entropy";
    Tally pseudo(s, "S_q(A x B) = S_q(A) (+)_q S_q(B)", 1e-12, opt);
    Tally renyi_add(s, "R_q(A x B) = R_q(A) + R_q(B)", 1e-12, opt);
    Tally renyi_tsallis(s, "R_q = ln exp_q S_q", 1e-12, opt);
    Tally alpha_range(s, "quasi-additivity alpha in [1, 2], < 2 off uniform", 1e-10, opt);
    Tally alpha_limits(s, "alpha = 2 on uniform, 1 on delta", 1e-10, opt);
    Tally hybrid_add(s, "D_q(A x B) = D_q(A) (+)_q D_q(B)", 1e-10, opt);
    Tally avg(s, "A_q = D_{(q+1)/2}", 1e-12, opt);
    Tally monotone(s, "S_q non-increasing in q on [0.5, 2]", 1e-14, opt);
    Tally order(s, "quasi-additivity gap is O((q-1)^2)", 0.2, opt);

    for (int t = 0; t < 1000; ++t) {
        const Distribution pa = random_distribution(rng, random_size(rng, 2, 6));
        const Distribution pb = random_distribution(rng, random_size(rng, 2, 6));
        const Distribution joint = product(pa, pb);
        const DeformParam q(uniform(rng, 0.1, 3.0));

        pseudo.error(rel_err(tsallis(joint, q), q_add(tsallis(pa, q), tsallis(pb, q), q)));
        renyi_add.error(rel_err(renyi(joint, q), renyi(pa, q) + renyi(pb, q)));
        renyi_tsallis.error(rel_err(renyi(pa, q), std::log(q_exp(tsallis(pa, q), q))));

        const DeformParam qh(uniform(rng, 0.5, 3.0));
        hybrid_add.error(rel_err(hybrid(joint, qh), q_add(hybrid(pa, qh), hybrid(pb, qh), qh)));
        avg.error(std::abs(avg_hybrid(pa, q) - hybrid(pa, DeformParam(0.5 * (q.value() + 1.0)))));

        double prev = tsallis(pa, DeformParam(0.5));
        for (int k = 1; k <= 30; ++k) {
            const double cur = tsallis(pa, DeformParam(0.5 + 1.5 * k / 30.0));
            monotone.error(std::max(0.0, cur - prev));
            prev = cur;
        }
    }
    for (int t = 0; t < 10000; ++t) {
        const Distribution p = random_distribution(rng, random_size(rng, 2, 10));
        const double a = quasi_additivity_alpha(p).value();
        alpha_range.truth(a >= 1.0 && a <= 2.0);
        alpha_range.error(std::max(0.0, a - (2.0 - 1e-10)));
    }
    for (std::size_t n = 1; n <= 20; ++n) {
        const double expected = n == 1 ? 1.0 : 2.0;
        alpha_limits.error(std::abs(quasi_additivity_alpha(Distribution::uniform(n)).value() - expected));
        alpha_limits.error(std::abs(quasi_additivity_alpha(Distribution::delta(n + 1)).value() - 1.0));
    }

    const Distribution p({0.5, 0.3, 0.2});
    const double g1 = quasi_additivity_check(p, DeformParam(1.1)).gap;
    const double g2 = quasi_additivity_check(p, DeformParam(1.05)).gap;
    const double g3 = quasi_additivity_check(p, DeformParam(1.025)).gap;
    order.error(std::abs(0.5 * (std::log2(g1 / g2) + std::log2(g2 / g3)) - 2.0));

    return {pseudo.result(),      renyi_add.result(),    renyi_tsallis.result(), alpha_range.result(),
            alpha_limits.result(), hybrid_add.result(), avg.result(),           monotone.result(),
            order.result()};
}

std::vector<PropertyResult> maxent_suite(const CheckOptions& opt) {
    Rng rng(opt.seed + 3);
    const std::string s = "maxent";
    Tally residual(s, "trinomial back-substitution |1 - x + b x^a|", 1e-12, opt);
    Tally series(s, "series agrees with closed forms, |b| <= 0.2", 1e-10, opt);
    Tally catalan(s, "alpha = 2 series coefficients are Catalan numbers", 0.0, opt);
    Tally lambert(s, "|W(x) e^W(x) - x| / max(1, |x|)", 1e-14, opt);
    Tally stationarity(s, "MaxEnt stationarity residual", 1e-8, opt);
    Tally affinity(s, "alpha = 1 solutions are q-exponential", 1e-8, opt);
    Tally bound(s, "Z_{(q+1)/2} <= sqrt(Z_q)", 1e-14, opt);

    for (const double alpha : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        const ScaleFactor a(alpha);
        const double top = alpha > 1.0 ? series_radius(a) : (alpha == 1.0 ? 0.99 : 2.0);
        for (int k = 0; k <= 100; ++k) {
            const double b = k == 100 ? top : -2.0 + (top + 2.0) * k / 100.0;
            const TrinomialProblem p{a, b};
            residual.error(std::abs(trinomial_residual(p, solve_trinomial(p))));
        }
    }
    for (const double alpha : {0.5, 1.0, 2.0}) {
        for (int k = -20; k <= 20; ++k) {
            const double b = 0.01 * k;
            const double closed = solve_trinomial({ScaleFactor(alpha), b});
            series.error(std::abs(trinomial_series(ScaleFactor(alpha), b, 2000, 1e-16).x - closed));
        }
    }
    double cat = 1.0;
    for (std::size_t n = 1; n <= 10; ++n) {
        cat = cat * 2.0 * (2.0 * n - 1.0) / (n + 1.0);
        catalan.truth(series_coefficient(ScaleFactor(2.0), n) == cat);
    }
    for (int k = 0; k < 1000; ++k) {
        const double lo = kLambertBranchPoint + 1e-6;
        // half the points near the branch point, half log-spaced up to 1e6
        const double x = k < 500 ? lo + (1.0 - lo) * k / 499.0 : std::pow(10.0, 6.0 * (k - 500) / 499.0);
        const double w = lambert_w(x);
        lambert.error(std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x)));
    }

    const std::vector<std::vector<double>> spectra = {{0.0, 1.0, 2.0}, {0.0, 0.5, 1.0, 1.7, 2.5}};
    for (const auto& levels : spectra) {
        for (const double q : {0.8, 1.2}) {
            for (const double alpha : {0.5, 1.0, 2.0}) {
                MaxEntProblem prob{EnergySpectrum(levels), DeformParam(q), ScaleFactor(alpha), 0.3, std::nullopt, {}};
                const MaxEntSolution sol = solve_maxent(prob);
                stationarity.truth(sol.converged);
                stationarity.error(sol.stationarity_residual);
                if (alpha == 1.0) {
                    affinity.error(q_exponential_affinity(prob.spectrum, sol.probs, prob.q));
                }
            }
        }
    }

    for (int t = 0; t < 10000; ++t) {
        const Distribution p = random_distribution(rng, random_size(rng, 1, 12));
        const PartitionBound pb = partition_bound_check(p, DeformParam(uniform(rng, 0.0, 4.0)));
        bound.error(std::max(0.0, pb.lhs - pb.rhs));
    }
    for (std::size_t n = 1; n <= 20; ++n) {
        const PartitionBound pb = partition_bound_check(Distribution::uniform(n), DeformParam(2.0));
        bound.error(std::abs(pb.lhs - pb.rhs));
    }
    return {residual.result(),     series.result(),   catalan.result(), lambert.result(),
            stationarity.result(), affinity.result(), bound.result()};
}

std::vector<PropertyResult> run_suite(std::string_view name, const CheckOptions& opt) {
    if (name == "group") {
        return group_suite(opt);
    }
    if (name == "algebra") {
        return algebra_suite(opt);
    }
    if (name == "entropy") {
        return entropy_suite(opt);
    }
    if (name == "maxent") {
        return maxent_suite(opt);
    }
    if (name == "all") {
        std::vector<PropertyResult> all;
        for (auto* suite : {&group_suite, &algebra_suite, &entropy_suite, &maxent_suite}) {
            auto part = (*suite)(opt);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw InvalidArgument("unknown suite '" + std::string(name) + "'");
}

}  // namespace qtherm::checks
