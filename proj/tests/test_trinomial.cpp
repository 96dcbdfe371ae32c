#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/lambert_w.hpp"
#include "qtherm/trinomial.hpp"

using namespace qtherm;
using doctest::Approx;

namespace {

double solve(double alpha, double b) { return solve_trinomial({ScaleFactor(alpha), b}); }

double f(double alpha, double b, double x) { return 1 - x + b * std::pow(x, alpha); }

}  // namespace

TEST_CASE("closed forms") {
    CHECK(solve(1, 0.2) == Approx(1.25).epsilon(1e-15));
    for (const double a : {0.5, 1.0, 2.0, 3.0, -1.5}) {
        CHECK(solve(a, 0.0) == 1.0);
    }
    const double x2 = solve(2, 0.1);
    CHECK(x2 == Approx((1 - std::sqrt(0.6)) / 0.2).epsilon(1e-14));
    CHECK(x2 == Approx(oracle::bisect([](double x) { return f(2, 0.1, x); }, 1, 2)).epsilon(1e-14));
    CHECK(x2 == Approx(1.127017).epsilon(1e-6));

    const double xh = solve(0.5, 0.7);
    CHECK(xh == Approx(oracle::bisect([](double x) { return f(0.5, 0.7, x); }, 1, 10)).epsilon(1e-14));
    const double xhn = solve(0.5, -3.0);
    CHECK(xhn == Approx(oracle::bisect([](double x) { return f(0.5, -3.0, x); }, 1e-12, 1)).epsilon(1e-12));
    CHECK(solve(2, 0.25) == Approx(2.0).epsilon(1e-15));
    CHECK(solve(2, -1e-12) == Approx(1.0).epsilon(1e-11));
}

TEST_CASE("generic alpha against bisection") {
    const double x3 = solve(3, 0.05);
    CHECK(x3 == Approx(oracle::bisect([](double x) { return f(3, 0.05, x); }, 1, 1.5)).epsilon(1e-14));
    CHECK(std::abs(trinomial_residual({ScaleFactor(3), 0.05}, x3)) < 1e-12);

    struct Case {
        double a, b, lo, hi;
    };
    for (const Case c : {Case{1.5, 0.3, 1, 3}, Case{1.5, -2.0, 0, 1}, Case{0.3, 5.0, 1, 100}, Case{0.3, -4.0, 0, 1},
                         Case{-1.0, 0.2, 1, 2}, Case{-1.0, -0.2, 0.5, 1}, Case{4.0, 0.1, 1, 4.0 / 3.0}}) {
        CAPTURE(c.a);
        CAPTURE(c.b);
        CHECK(solve(c.a, c.b) == Approx(oracle::bisect([&](double x) { return f(c.a, c.b, x); }, c.lo, c.hi))
                                     .epsilon(1e-13));
    }
}

TEST_CASE("no root on the branch") {
    CHECK_THROWS_AS(solve(2, 0.3), NoRealRoot);
    CHECK_THROWS_AS(solve(1, 1.0), NoRealRoot);
    CHECK_THROWS_AS(solve(1, 1.5), NoRealRoot);
    CHECK_THROWS_AS(solve(3, 0.2), NoRealRoot);  // radius 4/27
    CHECK_THROWS_AS(solve(-1, -0.3), NoRealRoot);  // radius 1/4
    try {
        solve(2, 0.3);
    } catch (const NoRealRoot& e) {
        CHECK(e.alpha() == 2.0);
        CHECK(e.b() == 0.3);
        CHECK_FALSE(e.has_level());
    }
}

TEST_CASE("series radius") {
    CHECK(series_radius(ScaleFactor(2)) == Approx(0.25).epsilon(1e-15));
    CHECK(series_radius(ScaleFactor(1)) == 1.0);
    CHECK(series_radius(ScaleFactor(3)) == Approx(4.0 / 27.0).epsilon(1e-15));
    CHECK(series_radius(ScaleFactor(0.5)) == Approx(std::pow(0.5, -0.5) / std::pow(0.5, 0.5)).epsilon(1e-15));
}

TEST_CASE("series coefficients") {
    // Catalan numbers
    const double catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (std::size_t n = 1; n <= 10; ++n) {
        CHECK(series_coefficient(ScaleFactor(2), n) == catalan[n]);
    }
    for (std::size_t n = 1; n <= 8; ++n) {
        CHECK(series_coefficient(ScaleFactor(1), n) == 1.0);
    }
    CHECK(generalized_binomial(0.5, 2) == Approx(-0.125).epsilon(1e-15));
    CHECK(generalized_binomial(-1.5, 3) == Approx(-1.5 * -2.5 * -3.5 / 6).epsilon(1e-15));
    // log-gamma path agrees with the product path
    long double direct = 1;
    for (int j = 0; j < 69; ++j) {
        direct = direct * (175.0L - j) / (j + 1);
    }
    CHECK(generalized_binomial(175.0, 69) == Approx(static_cast<double>(direct)).epsilon(1e-11));
    CHECK_THROWS_AS(series_coefficient(ScaleFactor(2), 0), InvalidArgument);
}

TEST_CASE("series sums") {
    const SeriesSum g = trinomial_series(ScaleFactor(1), 0.2, 500, 1e-17);
    CHECK(g.x == Approx(1.25).epsilon(1e-15));
    const SeriesSum z = trinomial_series(ScaleFactor(2.7), 0.0, 50, 1e-15);
    CHECK(z.x == 1.0);
    CHECK(z.terms_used == 0);
    for (const double a : {0.5, 1.0, 2.0}) {
        for (const double b : {-0.2, -0.05, 0.1, 0.2}) {
            CHECK(std::abs(trinomial_series(ScaleFactor(a), b, 2000, 1e-16).x - solve(a, b)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(trinomial_series(ScaleFactor(2), 0.4, 500, 1e-15), DivergentSeries);
}

TEST_CASE("lambert w") {
    CHECK(lambert_w(0) == 0.0);
    CHECK(lambert_w(std::exp(1.0)) == Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w(1.0) == Approx(0.5671432904).epsilon(1e-10));
    CHECK(lambert_w(1.0) == Approx(oracle::lambert_w(1.0)).epsilon(1e-15));
    CHECK(lambert_w(kLambertBranchPoint) == -1.0);
    for (const double x : {-0.36, -0.2, 0.05, 3.0, 40.0, 1e5, 1e300}) {
        const double w = lambert_w(x);
        CHECK(w * std::exp(w) == Approx(x).epsilon(1e-14));
        CHECK(w == Approx(oracle::lambert_w(x)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(lambert_w(-0.4), DomainError);
    CHECK_THROWS_AS(lambert_w(NAN), InvalidArgument);
}
