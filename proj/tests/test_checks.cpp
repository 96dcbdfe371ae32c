#include "doctest.h"
#include "qtherm/checks.hpp"
#include "qtherm/errors.hpp"

using namespace qtherm;

TEST_CASE("every suite passes at seed 7") {
    for (const char* suite : {"group", "algebra", "entropy", "maxent"}) {
        for (const auto& r : checks::run_suite(suite, {})) {
            CAPTURE(r.suite);
            CAPTURE(r.name);
            CAPTURE(r.worst);
            CHECK(r.passed());
        }
    }
}

TEST_CASE("runs are deterministic under the seed") {
    const auto a = checks::run_suite("algebra", {11, 1.0});
    const auto b = checks::run_suite("algebra", {11, 1.0});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].worst == b[i].worst);
    }
}

TEST_CASE("zero tolerance fails") {
    bool any_failed = false;
    for (const auto& r : checks::run_suite("group", {7, 0.0})) {
        any_failed = any_failed || !r.passed();
    }
    CHECK(any_failed);
    CHECK_THROWS_AS(checks::run_suite("nope", {}), InvalidArgument);
}
