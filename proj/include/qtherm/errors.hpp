#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

namespace qtherm {

struct MaxEntSolution;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter failed validation (non-finite q, alpha = 0, bad distribution, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The inputs are valid values but outside the domain of the requested function.
/// `code` is a short machine-readable tag such as "pole" or "hybrid_q_below_half".
class DomainError : public Error {
public:
    DomainError(std::string code, const std::string& what)
        : Error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Malformed input file. `line` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Numerical solver failure. MaxEnt solvers attach their last iterate so that
/// callers can still report diagnostics.
class SolverError : public Error {
public:
    using Error::Error;

    const MaxEntSolution* partial() const noexcept { return partial_.get(); }
    void attach_partial(std::shared_ptr<const MaxEntSolution> s) { partial_ = std::move(s); }

private:
    std::shared_ptr<const MaxEntSolution> partial_;
};

class NonConvergence : public SolverError {
public:
    using SolverError::SolverError;
};

class DivergentSeries : public SolverError {
public:
    using SolverError::SolverError;
};

/// 1 - x + b x^alpha = 0 has no positive real root on the branch through x(0) = 1.
/// `level` is set when the failing equation came from a MaxEnt sweep.
class NoRealRoot : public SolverError {
public:
    static constexpr std::size_t kNoLevel = static_cast<std::size_t>(-1);

    NoRealRoot(double alpha, double b, std::size_t level, const std::string& what)
        : SolverError(what), alpha_(alpha), b_(b), level_(level) {}

    double alpha() const noexcept { return alpha_; }
    double b() const noexcept { return b_; }
    std::size_t level() const noexcept { return level_; }
    bool has_level() const noexcept { return level_ != kNoLevel; }

private:
    double alpha_;
    double b_;
    std::size_t level_;
};

}  // namespace qtherm
