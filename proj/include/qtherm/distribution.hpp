#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qtherm {

/// Finite discrete probability vector.
///
/// Construction accepts vectors whose sum is within kNormTolerance of 1 as is.
/// Sums within kRenormTolerance are rescaled and `renormalized()` reports it;
/// anything further off, empty input, NaN, infinite or negative entries is
/// rejected with InvalidArgument.
class Distribution {
public:
    static constexpr double kNormTolerance = 1e-12;
    static constexpr double kRenormTolerance = 1e-9;

    explicit Distribution(std::vector<double> probs);

    /// Divides a nonnegative weight vector by its sum. The sum must be positive
    /// and finite.
    static Distribution from_weights(std::vector<double> weights);

    static Distribution uniform(std::size_t n);
    /// All mass on `index`.
    static Distribution delta(std::size_t n, std::size_t index = 0);

    std::span<const double> probs() const noexcept { return probs_; }
    const std::vector<double>& vector() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    bool renormalized() const noexcept { return renormalized_; }
    /// Sum of the entries as given to the constructor.
    double input_sum() const noexcept { return input_sum_; }
    bool has_zero() const noexcept;

private:
    struct Trusted {};
    Distribution(Trusted, std::vector<double> probs, double input_sum);

    std::vector<double> probs_;
    double input_sum_ = 1.0;
    bool renormalized_ = false;
};

/// Joint distribution of two independent systems, p_ij = a_i b_j (row major).
Distribution product(const Distribution& a, const Distribution& b);

/// Energy levels E_k: at least two, all finite. A spectrum whose levels are all
/// equal is accepted and reported by `degenerate()`.
class EnergySpectrum {
public:
    explicit EnergySpectrum(std::vector<double> levels);

    std::span<const double> levels() const noexcept { return levels_; }
    std::size_t size() const noexcept { return levels_.size(); }
    double operator[](std::size_t i) const { return levels_[i]; }
    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }
    bool degenerate() const noexcept { return min_ == max_; }

private:
    std::vector<double> levels_;
    double min_;
    double max_;
};

}  // namespace qtherm
