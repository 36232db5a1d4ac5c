#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "wcs/errors.hpp"
#include "wcs/log_gamma.hpp"

namespace wcs {

/// The deformation triple (alpha, beta, nu).
///
/// Construction validates alpha in [0,1], beta in (0,1] and nu > alpha - 1, so
/// every gamma argument appearing in [n]! is strictly positive.
class DeformationParams {
public:
    DeformationParams(double alpha, double beta, double nu) : alpha_(alpha), beta_(beta), nu_(nu) {
        if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must lie in [0, 1]");
        if (!(beta > 0.0 && beta <= 1.0)) fail("beta must lie in (0, 1]");
        if (!std::isfinite(nu) || !(nu > alpha - 1.0)) fail("nu must satisfy nu > alpha - 1");
    }

    static DeformationParams classical() { return {0.0, 1.0, 0.0}; }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double nu() const { return nu_; }

    // Coherent states are defined for nu >= 0.
    bool cs_valid() const { return nu_ >= 0.0; }
    // Carleman determinacy: (alpha + beta) / 2 <= 1.
    bool complete() const { return alpha_ + beta_ <= 2.0; }

    std::string describe() const {
        std::ostringstream os;
        os << "(alpha=" << alpha_ << ", beta=" << beta_ << ", nu=" << nu_ << ")";
        return os.str();
    }

    friend bool operator==(const DeformationParams&, const DeformationParams&) = default;

private:
    [[noreturn]] void fail(const char* what) const {
        std::ostringstream os;
        os << "invalid deformation parameters (alpha=" << alpha_ << ", beta=" << beta_
           << ", nu=" << nu_ << "): " << what;
        throw ParameterError(os.str());
    }

    double alpha_;
    double beta_;
    double nu_;
};

/// Sign and natural log of the magnitude of a real number.
struct LogValue {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    static LogValue zero() { return {}; }
    static LogValue one() { return {1, 0.0}; }
    static LogValue from_log(double log_abs) { return {1, log_abs}; }
    static LogValue from_linear(double v) {
        if (v == 0.0) return zero();
        return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
    }

    bool is_zero() const { return sign == 0; }

    /// True if to_linear() would succeed.
    bool representable() const {
        if (sign == 0) return true;
        return log_abs <= max_log() && log_abs >= min_log();
    }

    /// Converts to double; throws RangeError outside the normal double exponent range.
    double to_linear() const {
        if (sign == 0) return 0.0;
        if (!representable()) {
            throw RangeError("LogValue out of double range: log|v| = " + std::to_string(log_abs));
        }
        return sign * std::exp(log_abs);
    }

    friend LogValue operator*(LogValue a, LogValue b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.sign * b.sign, a.log_abs + b.log_abs};
    }
    friend LogValue operator/(LogValue a, LogValue b) {
        if (b.sign == 0) throw RangeError("LogValue division by zero");
        if (a.sign == 0) return zero();
        return {a.sign * b.sign, a.log_abs - b.log_abs};
    }

    static double max_log() { return std::log(std::numeric_limits<double>::max()); }
    static double min_log() { return std::log(std::numeric_limits<double>::min()); }
};

namespace detail {

inline double checked_log_gamma(double x) {
    if (!(x > 0.0)) {
        throw ParameterError("gamma argument " + std::to_string(x) +
                             " is not positive for these deformation parameters");
    }
    return log_gamma(x);
}

// ln Gamma(y + d) - ln Gamma(y), with the parameter-domain error of checked_log_gamma.
inline double checked_log_gamma_ratio(double y, double d) {
    if (!(y > 0.0) || !(y + d > 0.0)) {
        throw ParameterError("gamma arguments " + std::to_string(y) + ", " + std::to_string(y + d) +
                             " are not positive for these deformation parameters");
    }
    return log_gamma_ratio(y, d);
}

}  // namespace detail

/// log of the box function [n] for n >= 1.
inline double log_box(std::uint64_t n, const DeformationParams& p) {
    const double a = p.alpha(), b = p.beta(), v = p.nu();
    const double bn = b * static_cast<double>(n);
    // Gamma(bn + 1) / Gamma(bn + 1 - a) * Gamma(bn + 1 - a + v) / Gamma(bn - b + 1 - a + v)
    return detail::checked_log_gamma_ratio(bn + 1.0 - a, a) + detail::checked_log_gamma_ratio(bn - b + 1.0 - a + v, b);
}

/// [n]_{alpha,beta,nu}; zero at n = 0.
inline LogValue box(std::uint64_t n, const DeformationParams& p) {
    if (n == 0) return LogValue::zero();
    return LogValue::from_log(log_box(n, p));
}

/// Linear-scale box value (0 at n = 0).
inline double box_value(std::uint64_t n, const DeformationParams& p) {
    return n == 0 ? 0.0 : std::exp(log_box(n, p));
}

/// Streams log [n]! for n = 0, 1, 2, ... using the telescoped closed form.
///
/// The running part is the prefix sum of lnGamma(beta i + 1) - lnGamma(beta i + 1 - alpha);
/// the final ratio Gamma(beta n + 1 - alpha + nu) / Gamma(1 - alpha + nu) is evaluated
/// afresh for each n, so no product of box values is ever formed.
class LogFactorialSequence {
public:
    explicit LogFactorialSequence(const DeformationParams& p)
        : p_(p), shift_(1.0 - p.alpha() + p.nu()) {}

    std::uint64_t index() const { return n_; }
    double value() const { return prefix_ + tail_; }

    // Advance n -> n + 1 and return log [n+1]!.
    double next() {
        ++n_;
        const double bn = p_.beta() * static_cast<double>(n_);
        if (p_.alpha() != 0.0) {
            prefix_ += detail::checked_log_gamma_ratio(bn + 1.0 - p_.alpha(), p_.alpha());
        }
        tail_ = detail::checked_log_gamma_ratio(shift_, bn);
        return value();
    }

private:
    DeformationParams p_;
    double shift_;
    std::uint64_t n_ = 0;
    double prefix_ = 0.0;
    double tail_ = 0.0;
};

/// [n]_{alpha,beta,nu}! in log space.
inline LogValue gen_factorial(std::uint64_t n, const DeformationParams& p) {
    LogFactorialSequence seq(p);
    while (seq.index() < n) seq.next();
    return LogValue::from_log(seq.value());
}

/// [k]!! := prod_{i=1}^{k/2} [2i]; defined for even k only.
inline LogValue gen_double_factorial(std::uint64_t k, const DeformationParams& p) {
    if (k % 2 != 0) {
        throw ParameterError("gen_double_factorial: k must be even, got " + std::to_string(k));
    }
    double acc = 0.0;
    for (std::uint64_t i = 1; i <= k / 2; ++i) acc += log_box(2 * i, p);
    return LogValue::from_log(acc);
}

/// Large-n approximation ln[n]! ~ (alpha + beta) n (ln(beta n) - 1).
inline double log_factorial_asymptotic(std::uint64_t n, const DeformationParams& p) {
    if (n == 0) throw ParameterError("log_factorial_asymptotic: n must be >= 1");
    const double nn = static_cast<double>(n);
    return (p.alpha() + p.beta()) * nn * (std::log(p.beta() * nn) - 1.0);
}

}  // namespace wcs
