#include "qtherm/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

double checked_sum(const std::vector<double>& values) {
    if (values.empty()) {
        throw InvalidArgument("distribution must have at least one entry");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double p = values[i];
        if (std::isnan(p)) {
            throw InvalidArgument("entry " + std::to_string(i) + " is NaN");
        }
        if (!std::isfinite(p)) {
            throw InvalidArgument("entry " + std::to_string(i) + " is infinite");
        }
        if (p < 0.0) {
            throw InvalidArgument("entry " + std::to_string(i) + " is negative");
        }
    }
    return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    input_sum_ = checked_sum(probs_);
    const double err = std::abs(input_sum_ - 1.0);
    if (err <= kNormTolerance) {
        return;
    }
    if (err > kRenormTolerance) {
        throw InvalidArgument("probabilities sum to " + std::to_string(input_sum_) + ", not 1");
    }
    for (double& p : probs_) {
        p /= input_sum_;
    }
    renormalized_ = true;
}

Distribution::Distribution(Trusted, std::vector<double> probs, double input_sum)
    : probs_(std::move(probs)), input_sum_(input_sum) {}

Distribution Distribution::from_weights(std::vector<double> weights) {
    const double total = checked_sum(weights);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw InvalidArgument("weights must have a positive finite sum");
    }
    for (double& w : weights) {
        w /= total;
    }
    return Distribution(Trusted{}, std::move(weights), 1.0);
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("uniform distribution needs n >= 1");
    }
    return Distribution(Trusted{}, std::vector<double>(n, 1.0 / static_cast<double>(n)), 1.0);
}

Distribution Distribution::delta(std::size_t n, std::size_t index) {
    if (index >= n) {
        throw InvalidArgument("delta index out of range");
    }
    std::vector<double> p(n, 0.0);
    p[index] = 1.0;
    return Distribution(Trusted{}, std::move(p), 1.0);
}

bool Distribution::has_zero() const noexcept {
    return std::any_of(probs_.begin(), probs_.end(), [](double p) { return p == 0.0; });
}

Distribution product(const Distribution& a, const Distribution& b) {
    std::vector<double> joint;
    joint.reserve(a.size() * b.size());
    for (double pa : a.probs()) {
        for (double pb : b.probs()) {
            joint.push_back(pa * pb);
        }
    }
    return Distribution::from_weights(std::move(joint));
}

EnergySpectrum::EnergySpectrum(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) {
        throw InvalidArgument("energy spectrum needs at least two levels");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!std::isfinite(levels_[i])) {
            throw InvalidArgument("energy level " + std::to_string(i) + " is not finite");
        }
    }
    const auto [lo, hi] = std::minmax_element(levels_.begin(), levels_.end());
    min_ = *lo;
    max_ = *hi;
}

}  // namespace qtherm
