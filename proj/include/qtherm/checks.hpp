#pragma once

// Seeded property suites behind `qtherm check`. Each property is sampled many
// times and reported with its worst observed error.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qtherm::checks {

struct CheckOptions {
    std::uint64_t seed = 7;
    /// Multiplies every tolerance. Only meant for exercising the failure path.
    double tolerance_scale = 1.0;
};

struct PropertyResult {
    std::string suite;
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst = 0.0;      ///< largest observed error (meaning depends on the property)
    double tolerance = 0.0;  ///< bound the error was held to

    bool passed() const noexcept { return failures == 0 && trials > 0; }
};

std::vector<PropertyResult> group_suite(const CheckOptions& opt);
std::vector<PropertyResult> algebra_suite(const CheckOptions& opt);
std::vector<PropertyResult> entropy_suite(const CheckOptions& opt);
std::vector<PropertyResult> maxent_suite(const CheckOptions& opt);

/// "group", "algebra", "entropy", "maxent" or "all". Throws InvalidArgument otherwise.
std::vector<PropertyResult> run_suite(std::string_view name, const CheckOptions& opt);

}  // namespace qtherm::checks
