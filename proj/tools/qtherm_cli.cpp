// qtherm: command-line front end for the q-deformation library.
//
// Exit codes: 0 success, 1 property failure, 2 flag error, 3 parse error,
// 4 domain error, 5 solver failure.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtherm/checks.hpp"
#include "qtherm/csv_io.hpp"
#include "qtherm/deformation.hpp"
#include "qtherm/entropy.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/maxent.hpp"
#include "qtherm/qalgebra.hpp"
#include "qtherm/trinomial.hpp"

namespace {

using nlohmann::json;
using namespace qtherm;

enum Exit : int {
    kOk = 0,
    kPropertyFailure = 1,
    kFlagError = 2,
    kParseError = 3,
    kDomainError = 4,
    kSolverFailure = 5,
};

constexpr double kAcceptedResidual = 1e-8;

struct Common {
    std::string format = "json";
};

bool csv(const Common& c) { return c.format == "csv"; }

// Rows of a two-line CSV (header + values) or a JSON object, from ordered pairs.
void emit_record(const Common& c, const std::vector<std::pair<std::string, json>>& fields) {
    if (csv(c)) {
        std::string header;
        std::string row;
        bool first = true;
        for (const auto& [k, v] : fields) {
            const char* sep = first ? "" : ",";
            first = false;
            header += sep + k;
            std::string cell;
            if (v.is_number_float()) {
                cell = format_real(v.get<double>());
            } else if (v.is_string()) {
                cell = v.get<std::string>();
            } else {
                cell = v.dump();
            }
            row += sep + cell;
        }
        std::cout << header << '\n' << row << '\n';
        return;
    }
    json out = json::object();
    for (const auto& [k, v] : fields) {
        out[k] = v;
    }
    std::cout << out.dump(2) << '\n';
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------- transform

struct TransformArgs {
    double q = 1.0;
    double alpha = 1.0;
};

int run_transform(const TransformArgs& a, const Common& c) {
    const DeformParam q(a.q);
    const ScaleFactor alpha(a.alpha);
    const DualResult add = additive_dual(q);
    std::optional<DualResult> mul;
    if (q.value() != 0.0) {
        mul = multiplicative_dual(q);
    }
    emit_record(c, {{"q", q.value()},
                    {"alpha", alpha.value()},
                    {"q_alpha", transform(q, alpha).value()},
                    {"additive_dual", add.q.value()},
                    {"additive_dual_outside_0_2", add.outside_unit_interval},
                    {"multiplicative_dual", mul ? json(mul->q.value()) : json(nullptr)},
                    {"multiplicative_dual_outside_0_2", mul ? json(mul->outside_unit_interval) : json(nullptr)}});
    return kOk;
}

// ---------------------------------------------------------------- entropy

struct EntropyArgs {
    std::string file;
    std::string kind = "tsallis";
    std::optional<double> q;
};

int run_entropy(const EntropyArgs& a, const Common& c) {
    if (a.kind != "shannon" && !a.q) {
        throw InvalidArgument("--q is required for --kind " + a.kind);
    }
    const Distribution p = read_distribution(a.file);
    const DeformParam q(a.q.value_or(1.0));
    double value = 0.0;
    if (a.kind == "tsallis") {
        value = tsallis(p, q);
    } else if (a.kind == "shannon") {
        value = shannon(p);
    } else if (a.kind == "renyi") {
        value = renyi(p, q);
    } else if (a.kind == "hybrid") {
        value = hybrid(p, q);
    } else {
        value = avg_hybrid(p, q);
    }
    emit_record(c, {{"kind", a.kind},
                    {"q", a.kind == "shannon" ? json(nullptr) : json(q.value())},
                    {"n", p.size()},
                    {"input_sum", p.input_sum()},
                    {"renormalized", p.renormalized()},
                    {"value", value}});
    return kOk;
}

// ---------------------------------------------------------------- escort

struct EscortArgs {
    std::string file;
    double r = 1.0;
    std::string energies;
};

int run_escort(const EscortArgs& a, const Common& c) {
    const Distribution p = read_distribution(a.file);
    const Distribution rho = escort(p, a.r);
    std::optional<double> mean;
    if (!a.energies.empty()) {
        const EnergySpectrum e = read_spectrum(a.energies);
        mean = escort_mean(p, e.levels(), a.r);
    }
    if (csv(c)) {
        std::cout << "i,p,rho\n";
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::cout << i << ',' << format_real(p[i]) << ',' << format_real(rho[i]) << '\n';
        }
        if (mean) {
            std::cout << "# escort_mean," << format_real(*mean) << '\n';
        }
        return kOk;
    }
    json out;
    out["r"] = a.r;
    out["escort"] = rho.vector();
    out["escort_mean"] = mean ? json(*mean) : json(nullptr);
    std::cout << out.dump(2) << '\n';
    return kOk;
}

// ---------------------------------------------------------------- maxent

struct MaxentArgs {
    std::string file;
    double q = 1.0;
    std::string alpha = "1";
    std::optional<double> omega;
    std::optional<double> target_mean;
    std::string entropy = "tsallis";
    double omega_min = -1e3;
    double omega_max = 1e3;
    std::size_t max_iterations = 10000;
};

void emit_solution(const MaxentArgs& a, const Common& c, const EnergySpectrum& e, const MaxEntSolution& s) {
    const double affine = q_exponential_affinity(e, s.probs, DeformParam(a.q));
    if (csv(c)) {
        std::cout << "i,E,p\n";
        for (std::size_t i = 0; i < e.size(); ++i) {
            std::cout << i << ',' << format_real(e.levels()[i]) << ',' << format_real(s.probs[i]) << '\n';
        }
        std::cout << "# Z_q," << format_real(s.z_q.z) << '\n'
                  << "# Z_q_alpha," << format_real(s.z_q_alpha.z) << '\n'
                  << "# phi," << format_real(s.phi) << '\n'
                  << "# escort_mean," << format_real(s.escort_mean) << '\n'
                  << "# omega," << format_real(s.omega) << '\n'
                  << "# residual," << format_real(s.stationarity_residual) << '\n'
                  << "# iterations," << s.iterations << '\n'
                  << "# converged," << (s.converged ? "true" : "false") << '\n'
                  << "# affine_fit_residual," << format_real(affine) << '\n';
        return;
    }
    json out;
    json levels = json::array();
    for (std::size_t i = 0; i < e.size(); ++i) {
        levels.push_back({{"i", i}, {"E", e.levels()[i]}, {"p", s.probs[i]}});
    }
    out["levels"] = levels;
    out["Z_q"] = s.z_q.z;
    out["Z_q_alpha"] = s.z_q_alpha.z;
    out["phi"] = real_or_null(s.phi);
    out["escort_mean"] = s.escort_mean;
    out["omega"] = s.omega;
    out["residual"] = real_or_null(s.stationarity_residual);
    out["iterations"] = s.iterations;
    out["converged"] = s.converged;
    out["affine_fit_residual"] = real_or_null(affine);
    std::cout << out.dump(2) << '\n';
}

int run_maxent(const MaxentArgs& a, const Common& c) {
    if (a.omega.has_value() == a.target_mean.has_value()) {
        throw InvalidArgument("exactly one of --omega and --target-mean is required");
    }
    const bool shannon_limit = a.alpha == "inf" || a.alpha == "infinity";
    double alpha_value = std::numeric_limits<double>::infinity();
    if (!shannon_limit) {
        try {
            std::size_t used = 0;
            alpha_value = std::stod(a.alpha, &used);
            if (used != a.alpha.size()) {
                throw std::invalid_argument(a.alpha);
            }
        } catch (const std::exception&) {
            throw InvalidArgument("--alpha must be a number or 'inf', got '" + a.alpha + "'");
        }
    }
    const EnergySpectrum spectrum = read_spectrum(a.file);
    const DeformParam q(a.q);
    SolverOptions opt;
    opt.omega_lo = a.omega_min;
    opt.omega_hi = a.omega_max;
    opt.max_iterations = a.max_iterations;

    try {
        MaxEntSolution sol = [&] {
            if (shannon_limit) {
                return a.target_mean ? solve_maxent_shannon_limit_target(spectrum, q, *a.target_mean, opt)
                                     : solve_maxent_shannon_limit(spectrum, q, *a.omega, opt);
            }
            MaxEntProblem prob{spectrum, q, ScaleFactor(alpha_value), a.omega.value_or(0.0), a.target_mean, opt};
            return a.entropy == "renyi" ? solve_maxent_renyi(prob) : solve_maxent(prob);
        }();
        emit_solution(a, c, spectrum, sol);
        if (!sol.converged || !(sol.stationarity_residual <= kAcceptedResidual)) {
            std::cerr << "qtherm: solution not certified (residual " << sol.stationarity_residual << ")\n";
            return kSolverFailure;
        }
        return kOk;
    } catch (const SolverError& e) {
        if (e.partial() != nullptr) {
            emit_solution(a, c, spectrum, *e.partial());
        }
        std::cerr << "qtherm: solver failure: " << e.what() << '\n';
        return kSolverFailure;
    }
}

// ---------------------------------------------------------------- trinomial

struct TrinomialArgs {
    double alpha = 1.0;
    double b = 0.0;
    bool series = false;
    std::size_t n_max = 200;
    double tol = 1e-15;
};

const char* method_name(TrinomialMethod m) {
    switch (m) {
        case TrinomialMethod::trivial: return "trivial";
        case TrinomialMethod::linear: return "linear";
        case TrinomialMethod::half_quadratic: return "half_quadratic";
        case TrinomialMethod::quadratic: return "quadratic";
        case TrinomialMethod::series_newton: return "series_newton";
        case TrinomialMethod::bracketed: return "bracketed";
    }
    return "unknown";
}

int run_trinomial(const TrinomialArgs& a, const Common& c) {
    const TrinomialProblem p{ScaleFactor(a.alpha), a.b};
    if (a.series) {
        try {
            const SeriesSum s = trinomial_series(p.alpha, p.b, a.n_max, a.tol);
            emit_record(c, {{"alpha", a.alpha},
                            {"b", a.b},
                            {"x", s.x},
                            {"residual", trinomial_residual(p, s.x)},
                            {"method", "series"},
                            {"terms_used", s.terms_used}});
            return kOk;
        } catch (const DivergentSeries& e) {
            std::cerr << "qtherm: " << e.what() << '\n';
            return kSolverFailure;
        }
    }
    const TrinomialRoot r = solve_trinomial_detailed(p);
    emit_record(c, {{"alpha", a.alpha},
                    {"b", a.b},
                    {"x", r.x},
                    {"residual", trinomial_residual(p, r.x)},
                    {"method", method_name(r.method)},
                    {"terms_used", nullptr}});
    return kOk;
}

// ---------------------------------------------------------------- heatbath

struct HeatbathArgs {
    std::optional<std::int64_t> n;
    std::optional<double> capacity;
    std::optional<double> fluct;
    double alpha = 1.0;
};

int run_heatbath(const HeatbathArgs& a, const Common& c) {
    const ScaleFactor alpha(a.alpha);
    if (a.n) {
        if (a.capacity || a.fluct) {
            throw InvalidArgument("--n cannot be combined with --capacity/--fluct");
        }
        const HeatBath bath(*a.n);
        const double n_alpha = rescale_bath(bath, alpha);
        emit_record(c, {{"n", *a.n},
                        {"q", heat_bath_q(bath).value()},
                        {"alpha", alpha.value()},
                        {"n_alpha", n_alpha},
                        {"q_alpha", transform(heat_bath_q(bath), alpha).value()},
                        {"q_of_n_alpha", heat_bath_q(n_alpha).value()}});
        return kOk;
    }
    if (!a.capacity || !a.fluct) {
        throw InvalidArgument("give either --n or both --capacity and --fluct");
    }
    const FluctuatingBath bath(*a.capacity, *a.fluct);
    emit_record(c, {{"capacity", bath.heat_capacity()},
                    {"rel_fluct", bath.rel_fluct()},
                    {"q", fluctuation_q(bath).value()},
                    {"alpha", alpha.value()},
                    {"rescaled_fluct", rescaled_fluctuation(bath.rel_fluct(), alpha)}});
    return kOk;
}

// ---------------------------------------------------------------- algebra-check

struct AlgebraArgs {
    double x = 0.0;
    double y = 0.0;
    double q = 1.0;
    double alpha = 1.0;
};

const char* outcome_name(IdentityOutcome o) {
    switch (o) {
        case IdentityOutcome::agree: return "agree";
        case IdentityOutcome::disagree: return "disagree";
        case IdentityOutcome::domain_mismatch: return "domain_mismatch";
    }
    return "unknown";
}

int run_algebra_check(const AlgebraArgs& a, const Common& c) {
    const DeformParam q(a.q);
    const ScaleFactor alpha(a.alpha);
    struct Law {
        const char* name;
        std::function<IdentityCheck()> eval;
    };
    const std::vector<Law> laws = {
        {"dist_add", [&] { return dist_add(a.x, a.y, q, alpha); }},
        {"dist_sub", [&] { return dist_sub(a.x, a.y, q, alpha); }},
        {"dist_mul", [&] { return dist_mul(a.x, a.y, q, alpha); }},
        {"dist_div", [&] { return dist_div(a.x, a.y, q, alpha); }},
        {"exp_scaling", [&] { return exp_scaling(a.x, q, alpha); }},
        {"log_scaling", [&] { return log_scaling(a.x, q, alpha); }},
    };
    bool any_disagree = false;
    json rows = json::array();
    if (csv(c)) {
        std::cout << "law,lhs,rhs,outcome\n";
    }
    for (const Law& law : laws) {
        std::string outcome;
        double lhs = std::numeric_limits<double>::quiet_NaN();
        double rhs = lhs;
        try {
            const IdentityCheck r = law.eval();
            lhs = r.lhs;
            rhs = r.rhs;
            outcome = outcome_name(r.outcome);
            any_disagree = any_disagree || r.outcome == IdentityOutcome::disagree;
        } catch (const DomainError&) {
            outcome = "domain_error";
        }
        if (csv(c)) {
            std::cout << law.name << ',' << format_real(lhs) << ',' << format_real(rhs) << ',' << outcome << '\n';
        } else {
            rows.push_back({{"law", law.name}, {"lhs", real_or_null(lhs)}, {"rhs", real_or_null(rhs)},
                            {"outcome", outcome}});
        }
    }
    if (!csv(c)) {
        json out;
        out["x"] = a.x;
        out["y"] = a.y;
        out["q"] = a.q;
        out["alpha"] = a.alpha;
        out["q_alpha"] = transform(q, alpha).value();
        out["laws"] = rows;
        out["all_agree"] = !any_disagree;
        std::cout << out.dump(2) << '\n';
    }
    return any_disagree ? kPropertyFailure : kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    std::string suite = "all";
    std::uint64_t seed = 7;
    double tolerance_scale = 1.0;
};

int run_check(CheckArgs a, const Common& c) {
    if (const char* env = std::getenv("QTHERM_SEED"); env != nullptr && *env != '\0') {
        try {
            a.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("QTHERM_SEED is not an unsigned integer: ") + env);
        }
    }
    const auto results = checks::run_suite(a.suite, {a.seed, a.tolerance_scale});
    std::size_t failed = 0;
    json rows = json::array();
    for (const auto& r : results) {
        failed += r.passed() ? 0 : 1;
        if (csv(c)) {
            continue;
        }
        rows.push_back({{"suite", r.suite},
                        {"property", r.name},
                        {"passed", r.passed()},
                        {"trials", r.trials},
                        {"failures", r.failures},
                        {"worst", r.worst},
                        {"tolerance", r.tolerance}});
    }
    if (csv(c)) {
        std::cout << "suite,property,passed,trials,failures,worst,tolerance\n";
        for (const auto& r : results) {
            std::cout << r.suite << ",\"" << r.name << "\"," << (r.passed() ? "true" : "false") << ',' << r.trials
                      << ',' << r.failures << ',' << format_real(r.worst) << ',' << format_real(r.tolerance) << '\n';
        }
    } else {
        json out;
        out["seed"] = a.seed;
        out["suite"] = a.suite;
        out["properties"] = rows;
        out["passed"] = results.size() - failed;
        out["failed"] = failed;
        std::cout << out.dump(2) << '\n';
    }
    for (const auto& r : results) {
        std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.trials
                  << " trials, worst " << r.worst << ")\n";
    }
    return failed == 0 ? kOk : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-deformed thermostatistics: rescaling group, q-algebra, entropies and MaxEnt solver"};
    app.require_subcommand(1);
    Common common;
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };

    TransformArgs transform_args;
    auto* transform_cmd = app.add_subcommand("transform", "q_alpha and the additive/multiplicative duals");
    transform_cmd->add_option("--q", transform_args.q, "Nonadditivity index")->required();
    transform_cmd->add_option("--alpha", transform_args.alpha, "Scale factor (nonzero)")->required();
    add_format(transform_cmd);

    EntropyArgs entropy_args;
    auto* entropy_cmd = app.add_subcommand("entropy", "Entropy of a distribution file");
    entropy_cmd->add_option("file", entropy_args.file, "CSV with one probability per line")->required();
    entropy_cmd->add_option("--kind", entropy_args.kind)
        ->check(CLI::IsMember({"tsallis", "shannon", "renyi", "hybrid", "avg-hybrid"}))
        ->capture_default_str();
    entropy_cmd->add_option("--q", entropy_args.q, "Entropic index");
    add_format(entropy_cmd);

    EscortArgs escort_args;
    auto* escort_cmd = app.add_subcommand("escort", "Escort distribution and escort mean");
    escort_cmd->add_option("file", escort_args.file, "CSV with one probability per line")->required();
    escort_cmd->add_option("--r", escort_args.r, "Escort exponent")->required();
    escort_cmd->add_option("--energies", escort_args.energies, "CSV with one energy per line");
    add_format(escort_cmd);

    MaxentArgs maxent_args;
    auto* maxent_cmd = app.add_subcommand("maxent", "MaxEnt distribution under the q-escort energy constraint");
    maxent_cmd->add_option("file", maxent_args.file, "CSV with one energy level per line")->required();
    maxent_cmd->add_option("--q", maxent_args.q, "Nonadditivity index")->required();
    maxent_cmd->add_option("--alpha", maxent_args.alpha, "Scale factor > 0, or 'inf' for the Shannon limit")
        ->capture_default_str();
    auto* omega_opt = maxent_cmd->add_option("--omega", maxent_args.omega, "Lagrange multiplier Omega");
    auto* target_opt = maxent_cmd->add_option("--target-mean", maxent_args.target_mean, "Escort mean to match");
    omega_opt->excludes(target_opt);
    maxent_cmd->add_option("--entropy", maxent_args.entropy)
        ->check(CLI::IsMember({"tsallis", "renyi"}))
        ->capture_default_str();
    maxent_cmd->add_option("--omega-min", maxent_args.omega_min, "Omega bracket (target mode)")->capture_default_str();
    maxent_cmd->add_option("--omega-max", maxent_args.omega_max, "Omega bracket (target mode)")->capture_default_str();
    maxent_cmd->add_option("--max-iter", maxent_args.max_iterations, "Sweep cap")->capture_default_str();
    add_format(maxent_cmd);

    TrinomialArgs trinomial_args;
    auto* trinomial_cmd = app.add_subcommand("trinomial", "Root of 1 - x + b x^alpha = 0 with x(0) = 1");
    trinomial_cmd->add_option("--alpha", trinomial_args.alpha)->required();
    trinomial_cmd->add_option("--b", trinomial_args.b)->required();
    trinomial_cmd->add_flag("--series", trinomial_args.series, "Sum the Lagrange series instead");
    trinomial_cmd->add_option("--n-max", trinomial_args.n_max)->capture_default_str();
    trinomial_cmd->add_option("--tol", trinomial_args.tol)->capture_default_str();
    add_format(trinomial_cmd);

    HeatbathArgs heatbath_args;
    auto* heatbath_cmd = app.add_subcommand("heatbath", "Finite or fluctuating heat bath parameters");
    heatbath_cmd->add_option("--n", heatbath_args.n, "Number of bath particles");
    heatbath_cmd->add_option("--capacity", heatbath_args.capacity, "Reservoir heat capacity");
    heatbath_cmd->add_option("--fluct", heatbath_args.fluct, "Relative temperature fluctuation");
    heatbath_cmd->add_option("--alpha", heatbath_args.alpha, "Scale factor")->capture_default_str();
    add_format(heatbath_cmd);

    AlgebraArgs algebra_args;
    auto* algebra_cmd = app.add_subcommand("algebra-check", "Evaluate both sides of the distributive laws");
    algebra_cmd->add_option("--x", algebra_args.x)->required();
    algebra_cmd->add_option("--y", algebra_args.y)->required();
    algebra_cmd->add_option("--q", algebra_args.q)->required();
    algebra_cmd->add_option("--alpha", algebra_args.alpha)->required();
    add_format(algebra_cmd);

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Run the seeded property suites");
    check_cmd->add_option("--suite", check_args.suite)
        ->check(CLI::IsMember({"group", "algebra", "entropy", "maxent", "all"}))
        ->capture_default_str();
    check_cmd->add_option("--seed", check_args.seed, "RNG seed (QTHERM_SEED overrides)")->capture_default_str();
    check_cmd->add_option("--tolerance-scale", check_args.tolerance_scale)->group("");
    add_format(check_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kFlagError;
    }

    try {
        if (transform_cmd->parsed()) return run_transform(transform_args, common);
        if (entropy_cmd->parsed()) return run_entropy(entropy_args, common);
        if (escort_cmd->parsed()) return run_escort(escort_args, common);
        if (maxent_cmd->parsed()) return run_maxent(maxent_args, common);
        if (trinomial_cmd->parsed()) return run_trinomial(trinomial_args, common);
        if (heatbath_cmd->parsed()) return run_heatbath(heatbath_args, common);
        if (algebra_cmd->parsed()) return run_algebra_check(algebra_args, common);
        if (check_cmd->parsed()) return run_check(check_args, common);
    } catch (const InvalidArgument& e) {
        std::cerr << "qtherm: " << e.what() << '\n';
        return kFlagError;
    } catch (const ParseError& e) {
        std::cerr << "qtherm: " << e.what() << '\n';
        return kParseError;
    } catch (const DomainError& e) {
        std::cerr << "qtherm: domain error [" << e.code() << "]: " << e.what() << '\n';
        return kDomainError;
    } catch (const SolverError& e) {
        std::cerr << "qtherm: solver failure: " << e.what() << '\n';
        return kSolverFailure;
    }
    return kFlagError;
}
