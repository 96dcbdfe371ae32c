#include "qtherm/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "qtherm/errors.hpp"
#include "qtherm/lambert_w.hpp"
#include "qtherm/trinomial.hpp"

namespace qtherm {

namespace {

enum class Scheme { tsallis, renyi, shannon_limit };

// What is being extremized. `alpha` is infinite for the Shannon limit.
struct Model {
    Scheme scheme;
    DeformParam q;
    double alpha;
};

Distribution from_log_weights(const std::vector<double>& log_w) {
    const double top = *std::max_element(log_w.begin(), log_w.end());
    std::vector<double> w(log_w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(log_w[i] - top);
    }
    return Distribution::from_weights(std::move(w));
}

// Boltzmann-Gibbs reference: the whole model collapses to Shannon entropy with a
// linear energy constraint.
bool is_gibbs(const Model& m) { return m.q.is_additive(); }

MaxEntSolution finalize(const Model& m, const EnergySpectrum& spectrum, double omega, Distribution p,
                        std::size_t iterations, bool converged) {
    const DeformParam q = is_gibbs(m) ? DeformParam(1.0) : m.q;
    const double qv = q.value();
    const PartitionSum z_q = partition_sum(p, q);
    const double mean = escort_mean(p, spectrum.levels(), qv);

    // Shannon-type stationarity, used for the alpha -> infinity limit and the
    // Boltzmann-Gibbs branch: -ln p_i - S_1 - (q Omega dE_i / Z_q) p_i^{q-1} = 0.
    if (m.scheme == Scheme::shannon_limit || is_gibbs(m)) {
        const double s1 = shannon(p);
        double worst = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double de = spectrum[i] - mean;
            const double r = -std::log(p[i]) - s1 - qv * omega * de / z_q.z * std::pow(p[i], qv - 1.0);
            worst = std::max(worst, std::abs(r));
        }
        // q_alpha = 1 on both branches
        const PartitionSum z_qa = partition_sum(p, DeformParam(1.0));
        return {std::move(p), z_q, z_qa, s1, mean, omega, worst, iterations, converged};
    }

    const ScaleFactor alpha(m.alpha);
    const DeformParam q_alpha = transform(q, alpha);
    const PartitionSum z_qa = partition_sum(p, q_alpha);
    const double qa = q_alpha.value();
    double lead = qa / (1.0 - qa);
    const double phi = m.scheme == Scheme::tsallis ? lead * z_qa.z : lead;
    if (m.scheme == Scheme::renyi) {
        lead /= z_qa.z;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double de = spectrum[i] - mean;
        const double r = lead * std::pow(p[i], (qv - 1.0) / m.alpha) - phi -
                         qv * omega * de / z_q.z * std::pow(p[i], qv - 1.0);
        worst = std::max(worst, std::abs(r));
    }
    return {std::move(p), z_q, z_qa, phi, mean, omega, worst, iterations, converged};
}

std::shared_ptr<const MaxEntSolution> try_finalize(const Model& m, const EnergySpectrum& spectrum, double omega,
                                                   const Distribution& p, std::size_t iterations) {
    try {
        return std::make_shared<const MaxEntSolution>(finalize(m, spectrum, omega, p, iterations, false));
    } catch (const Error&) {
        return nullptr;
    }
}

// Unnormalized log-probabilities produced by one sweep from the iterate p.
std::vector<double> sweep(const Model& m, const EnergySpectrum& spectrum, double omega, const Distribution& p) {
    const double qv = m.q.value();
    const PartitionSum z_q = partition_sum(p, m.q);
    const double mean = escort_mean(p, spectrum.levels(), qv);
    std::vector<double> log_w(p.size());

    if (m.scheme == Scheme::shannon_limit) {
        const double s1 = shannon(p);
        const double pref = (qv - 1.0) * qv * std::exp(-(qv - 1.0) * s1) * omega / z_q.z;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double arg = pref * (spectrum[i] - mean);
            if (arg < kLambertBranchPoint) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "level " << i << ": Lambert W argument " << arg << " is below -1/e";
                throw NoRealRoot(m.alpha, arg, i, msg.str());
            }
            log_w[i] = -s1 - lambert_w(arg) / (qv - 1.0);
        }
        return log_w;
    }

    const ScaleFactor alpha(m.alpha);
    const double z_qa = partition_sum(p, transform(m.q, alpha)).z;
    const double exponent = m.alpha / (qv - 1.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        double b = trinomial_b(m.q, alpha, omega, spectrum[i] - mean, z_q.z, z_qa);
        if (m.scheme == Scheme::renyi) {
            b *= z_qa;
        }
        double x = 0.0;
        try {
            x = solve_trinomial({alpha, b});
        } catch (const NoRealRoot& e) {
            std::ostringstream msg;
            msg << "level " << i << ": " << e.what();
            throw NoRealRoot(m.alpha, b, i, msg.str());
        }
        log_w[i] = exponent * std::log(x * z_qa);
    }
    return log_w;
}

MaxEntSolution gibbs(const Model& m, const EnergySpectrum& spectrum, double omega) {
    std::vector<double> log_w(spectrum.size());
    for (std::size_t i = 0; i < log_w.size(); ++i) {
        log_w[i] = -omega * spectrum[i];
    }
    return finalize(m, spectrum, omega, from_log_weights(log_w), 0, true);
}

MaxEntSolution solve_fixed(const Model& m, const EnergySpectrum& spectrum, double omega, const SolverOptions& opt) {
    if (!std::isfinite(omega)) {
        throw InvalidArgument("omega must be finite");
    }
    if (spectrum.degenerate() || omega == 0.0) {
        return finalize(m, spectrum, omega, Distribution::uniform(spectrum.size()), 0, true);
    }
    if (is_gibbs(m)) {
        return gibbs(m, spectrum, omega);
    }

    Distribution p = Distribution::uniform(spectrum.size());
    std::vector<double> next(p.size());
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        std::vector<double> log_w;
        try {
            log_w = sweep(m, spectrum, omega, p);
        } catch (SolverError& e) {
            e.attach_partial(try_finalize(m, spectrum, omega, p, it - 1));
            throw;
        }
        const Distribution fresh = from_log_weights(log_w);
        double change = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i] = (1.0 - opt.damping) * p[i] + opt.damping * fresh[i];
            change = std::max(change, std::abs(next[i] - p[i]));
        }
        p = Distribution::from_weights(next);
        if (change < opt.tolerance) {
            return finalize(m, spectrum, omega, std::move(p), it, true);
        }
    }
    NonConvergence err("MaxEnt iteration did not converge within " + std::to_string(opt.max_iterations) +
                       " sweeps");
    err.attach_partial(try_finalize(m, spectrum, omega, p, opt.max_iterations));
    throw err;
}

// Bisection on Omega so that the escort mean reaches `target`. Omegas whose
// inner solve fails are treated as lying beyond the target.
MaxEntSolution solve_target(const Model& m, const EnergySpectrum& spectrum, double target, const SolverOptions& opt) {
    if (!std::isfinite(target) || target < spectrum.min() || target > spectrum.max()) {
        std::ostringstream msg;
        msg << "target mean " << target << " lies outside [" << spectrum.min() << ", " << spectrum.max() << "]";
        throw DomainError("target_mean_out_of_range", msg.str());
    }
    if (!(opt.omega_lo < 0.0 && opt.omega_hi > 0.0)) {
        throw InvalidArgument("omega bracket must contain 0");
    }
    const double spread = spectrum.max() - spectrum.min();
    const double mean_tol = 1e-12 * std::max(1.0, spread);

    MaxEntSolution best = solve_fixed(m, spectrum, 0.0, opt);
    const double f0 = best.escort_mean - target;
    if (std::abs(f0) <= mean_tol || spectrum.degenerate()) {
        return best;
    }

    // Direction in which Omega moves the mean.
    double probe = 1e-3 * std::min(-opt.omega_lo, opt.omega_hi);
    double slope = 0.0;
    for (int halvings = 0;; ++halvings) {
        try {
            slope = solve_fixed(m, spectrum, probe, opt).escort_mean - best.escort_mean;
            break;
        } catch (const SolverError&) {
            if (halvings == 60) {
                throw;
            }
            probe *= 0.5;
        }
    }
    const bool increase = (slope < 0.0) == (f0 > 0.0);
    double near = 0.0;
    double far = increase ? opt.omega_hi : opt.omega_lo;

    for (int iter = 0; iter < 300; ++iter) {
        const double mid = 0.5 * (near + far);
        if (mid == near || mid == far) {
            break;
        }
        bool beyond = true;
        try {
            MaxEntSolution s = solve_fixed(m, spectrum, mid, opt);
            const double f = s.escort_mean - target;
            beyond = (f > 0.0) != (f0 > 0.0);
            if (std::abs(f) < std::abs(best.escort_mean - target)) {
                best = std::move(s);
            }
            if (std::abs(f) <= mean_tol) {
                return best;
            }
        } catch (const SolverError&) {
        }
        (beyond ? far : near) = mid;
    }
    if (std::abs(best.escort_mean - target) <= 1e-9 * std::max(1.0, spread)) {
        return best;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "target mean " << target << " not reachable within omega bracket [" << opt.omega_lo << ", "
        << opt.omega_hi << "]; closest escort mean " << best.escort_mean << " at omega " << best.omega;
    SolverError err(msg.str());
    err.attach_partial(std::make_shared<const MaxEntSolution>(best));
    throw err;
}

MaxEntSolution solve(const Model& m, const MaxEntProblem& problem) {
    if (problem.alpha.value() <= 0.0) {
        throw InvalidArgument("MaxEnt requires alpha > 0");
    }
    if (!m.q.is_additive() && m.q.value() + problem.alpha.value() - 1.0 == 0.0) {
        throw DomainError("q_alpha_zero", "q + alpha - 1 = 0 makes q_alpha = 0");
    }
    if (problem.target_mean) {
        return solve_target(m, problem.spectrum, *problem.target_mean, problem.options);
    }
    return solve_fixed(m, problem.spectrum, problem.omega, problem.options);
}

}  // namespace

double trinomial_b(DeformParam q, ScaleFactor alpha, double omega, double delta_e, double z_q, double z_q_alpha) {
    if (!(z_q > 0.0) || !(z_q_alpha > 0.0) || !std::isfinite(z_q) || !std::isfinite(z_q_alpha)) {
        throw InvalidArgument("partition sums must be positive and finite");
    }
    const double qv = q.value();
    const double a = alpha.value();
    const double denom = qv + a - 1.0;
    if (denom == 0.0) {
        throw DomainError("q_alpha_zero", "q + alpha - 1 = 0 makes q_alpha = 0");
    }
    return qv * (1.0 - qv) / denom * std::pow(z_q_alpha, a - 1.0) / z_q * omega * delta_e;
}

MaxEntSolution solve_maxent(const MaxEntProblem& problem) {
    return solve({Scheme::tsallis, problem.q, problem.alpha.value()}, problem);
}

MaxEntSolution solve_maxent_renyi(const MaxEntProblem& problem) {
    return solve({Scheme::renyi, problem.q, problem.alpha.value()}, problem);
}

MaxEntSolution solve_maxent_shannon_limit(const EnergySpectrum& spectrum, DeformParam q, double omega,
                                          const SolverOptions& options) {
    const Model m{Scheme::shannon_limit, q, std::numeric_limits<double>::infinity()};
    return solve_fixed(m, spectrum, omega, options);
}

MaxEntSolution solve_maxent_shannon_limit_target(const EnergySpectrum& spectrum, DeformParam q, double target_mean,
                                                 const SolverOptions& options) {
    const Model m{Scheme::shannon_limit, q, std::numeric_limits<double>::infinity()};
    return solve_target(m, spectrum, target_mean, options);
}

double q_exponential_affinity(const EnergySpectrum& spectrum, const Distribution& p, DeformParam q) {
    if (spectrum.size() != p.size()) {
        throw InvalidArgument("spectrum and distribution sizes differ");
    }
    const std::size_t n = p.size();
    std::vector<double> y(n);
    double e_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::pow(p[i], q.coupling());
        e_mean += spectrum[i];
        y_mean += y[i];
    }
    e_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (spectrum[i] - e_mean) * (spectrum[i] - e_mean);
        sxy += (spectrum[i] - e_mean) * (y[i] - y_mean);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = y_mean + slope * (spectrum[i] - e_mean);
        worst = std::max(worst, std::abs(y[i] - fit));
    }
    return worst;
}

PartitionBound partition_bound_check(const Distribution& p, DeformParam q) {
    if (q.value() < 0.0) {
        throw DomainError("negative_q", "partition bound check requires q >= 0");
    }
    const double lhs = partition_sum(p, DeformParam(0.5 * (q.value() + 1.0))).z;
    const double rhs = std::sqrt(partition_sum(p, q).z);
    return {lhs, rhs};
}

}  // namespace qtherm
