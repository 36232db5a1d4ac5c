#pragma once

// The deformed exponential N(x) = sum_n x^n / [n]!, its derivatives, the
// W-function W(x) = N(x) / Gamma(1 - alpha + nu), and the deformed derivative
// acting on power series in x^beta.
//
// Since [n] -> infinity, the ratio test gives an infinite radius of convergence,
// so the series are treated as entire. Summation stops once three consecutive
// terms fall below tol * max(1, |partial sum|) and the term ratio has dropped
// below one; the reported tail bound is the geometric bound from that ratio.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wcs/errors.hpp"
#include "wcs/gamma_core.hpp"
#include "wcs/summation.hpp"

namespace wcs {

inline constexpr std::size_t kDefaultMaxTerms = 10000;
inline constexpr double kDefaultSeriesTol = 1e-14;
// Partial sums this many times larger than the result flag a cancellation.
inline constexpr double kCancellationRatio = 1e8;

struct SeriesResult {
    std::complex<double> value{0.0, 0.0};
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
    bool cancellation = false;

    double real() const { return value.real(); }
};

/// Real coefficients c_k of x^{beta k}, k = 0..size-1.
struct PowerSeries {
    std::vector<double> coefficients;
    double beta = 1.0;

    std::size_t size() const { return coefficients.size(); }

    struct Evaluation {
        double value = 0.0;
        bool cancellation = false;
    };

    /// Compensated evaluation at x >= 0.
    Evaluation evaluate(double x) const {
        if (x < 0.0) throw ParameterError("PowerSeries::evaluate: x must be >= 0");
        CompensatedSum sum;
        double peak = 0.0;
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            const double c = coefficients[k];
            if (c == 0.0) continue;
            sum.add(c * std::pow(x, beta * static_cast<double>(k)));
            peak = std::max(peak, std::fabs(sum.value()));
        }
        const double v = sum.value();
        return {v, peak > kCancellationRatio * std::fabs(v)};
    }

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

namespace detail {

// sum_n exp(n ln|w| - log[n]! - log_scale) e^{i n arg w}; the "1" in the stopping
// rule is scaled by the same factor.
inline SeriesResult n_series(std::complex<double> w, const DeformationParams& p, double tol,
                             std::size_t max_terms, double log_scale = 0.0) {
    if (!(tol > 0.0)) throw ParameterError("series tolerance must be positive");
    SeriesResult out;
    const double unit = std::exp(-log_scale);
    const double r = std::abs(w);
    if (r == 0.0) {
        out.value = unit;
        out.terms_used = 1;
        return out;
    }
    const double log_r = std::log(r);
    const double theta = std::arg(w);
    CompensatedComplexSum sum;
    sum.add(unit);
    double peak = unit;
    LogFactorialSequence lf(p);
    int small_run = 0;
    for (std::size_t n = 1; n < max_terms; ++n) {
        const double log_fact = lf.next();
        const double nn = static_cast<double>(n);
        const double log_mag = nn * log_r - log_fact - log_scale;
        if (log_mag > LogValue::max_log()) {
            throw RangeError("N-series term overflows at n = " + std::to_string(n));
        }
        const double mag = std::exp(log_mag);
        if (w.imag() == 0.0) {
            sum.add((w.real() < 0.0 && n % 2 == 1) ? -mag : mag);
        } else {
            sum.add(std::polar(mag, nn * theta));
        }
        const double s_abs = std::abs(sum.value());
        peak = std::max(peak, s_abs);
        const double scale = std::max(unit, s_abs);
        small_run = (mag < tol * scale) ? small_run + 1 : 0;
        if (small_run >= 3) {
            const double ratio = r / box_value(n + 1, p);
            if (ratio < 1.0) {
                const double tail = mag * ratio / (1.0 - ratio);
                if (tail <= tol * scale) {
                    out.value = sum.value();
                    out.terms_used = n + 1;
                    out.tail_bound = tail;
                    out.cancellation = peak > kCancellationRatio * std::abs(out.value);
                    return out;
                }
            }
        }
    }
    throw ConvergenceError("N-series did not converge within " + std::to_string(max_terms) +
                           " terms at |x| = " + std::to_string(r) + " for " + p.describe());
}

struct LogSeries {
    double log_value = 0.0;
    std::size_t terms_used = 0;
    double tail_rel = 0.0;
};

// log sum_{n >= r} n!/(n-r)! x^{n-r} / [n]!, for real x >= 0. All terms are positive.
inline LogSeries log_derivative_series(double x, unsigned r, const DeformationParams& p, double tol,
                                       std::size_t max_terms) {
    if (!(tol > 0.0)) throw ParameterError("series tolerance must be positive");
    if (x < 0.0) throw ParameterError("derivative series requires x >= 0");
    LogFactorialSequence lf(p);
    while (lf.index() < r) lf.next();
    const double rr = static_cast<double>(r);
    const double log_rfact = log_gamma(rr + 1.0);
    if (x == 0.0) return {log_rfact - lf.value(), 1, 0.0};
    const double log_x = std::log(x);
    LogSumExp acc;
    int small_run = 0;
    for (std::size_t n = r; n < max_terms; ++n) {
        if (n > r) lf.next();
        const double nn = static_cast<double>(n);
        const double log_term = log_gamma(nn + 1.0) - log_gamma(nn - rr + 1.0) + (nn - rr) * log_x - lf.value();
        acc.add(log_term);
        const double rel = std::exp(log_term - acc.log_value());
        small_run = (rel < tol) ? small_run + 1 : 0;
        if (small_run >= 3) {
            const double ratio = (nn + 1.0) / (nn + 1.0 - rr) * x / box_value(n + 1, p);
            if (ratio < 1.0) {
                const double tail = rel * ratio / (1.0 - ratio);
                if (tail <= tol) return {acc.log_value(), n - r + 1, tail};
            }
        }
    }
    throw ConvergenceError("derivative series did not converge within " + std::to_string(max_terms) +
                           " terms at x = " + std::to_string(x) + " for " + p.describe());
}

}  // namespace detail

/// N(x) = sum_n x^n / [n]! for complex x.
inline SeriesResult n_function(std::complex<double> x, const DeformationParams& p,
                               double tol = kDefaultSeriesTol, std::size_t max_terms = kDefaultMaxTerms) {
    return detail::n_series(x, p, tol, max_terms);
}

/// ln N(x) for real x >= 0, robust against overflow of N itself.
inline double log_n_function(double x, const DeformationParams& p, double tol = kDefaultSeriesTol,
                             std::size_t max_terms = kDefaultMaxTerms) {
    return detail::log_derivative_series(x, 0, p, tol, max_terms).log_value;
}

/// (d/dx)^r N(x) for real x >= 0, by term-wise differentiation.
inline SeriesResult n_function_derivative(double x, unsigned r, const DeformationParams& p,
                                          double tol = kDefaultSeriesTol,
                                          std::size_t max_terms = kDefaultMaxTerms) {
    const auto ls = detail::log_derivative_series(x, r, p, tol, max_terms);
    SeriesResult out;
    out.value = LogValue::from_log(ls.log_value).to_linear();
    out.terms_used = ls.terms_used;
    out.tail_bound = ls.tail_rel * out.value.real();
    return out;
}

/// W(x) = N(x) / Gamma(1 - alpha + nu).
inline SeriesResult wright_w(std::complex<double> x, const DeformationParams& p,
                             double tol = kDefaultSeriesTol, std::size_t max_terms = kDefaultMaxTerms) {
    SeriesResult out = n_function(x, p, tol, max_terms);
    const double g = gamma_fn(1.0 - p.alpha() + p.nu());
    out.value /= g;
    out.tail_bound /= g;
    return out;
}

/// D x^{beta k} = [k] x^{beta (k-1)}; constants are annihilated.
inline PowerSeries deformed_derivative(const PowerSeries& series, const DeformationParams& p) {
    if (series.beta != p.beta()) {
        throw ParameterError("deformed_derivative: series lattice exponent differs from beta");
    }
    PowerSeries out;
    out.beta = series.beta;
    if (series.coefficients.size() <= 1) return out;
    out.coefficients.resize(series.coefficients.size() - 1);
    for (std::size_t k = 1; k < series.coefficients.size(); ++k) {
        out.coefficients[k - 1] = series.coefficients[k] * box_value(k, p);
    }
    return out;
}

/// Coefficients lambda^k / [k]! of N(lambda x^beta), k = 0..k_max.
inline PowerSeries deformed_exponential_series(double lambda, const DeformationParams& p, std::size_t k_max) {
    PowerSeries s;
    s.beta = p.beta();
    s.coefficients.resize(k_max + 1);
    s.coefficients[0] = 1.0;
    LogFactorialSequence lf(p);
    const double log_l = std::log(std::fabs(lambda));
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double lfk = lf.next();
        if (lambda == 0.0) {
            s.coefficients[k] = 0.0;
            continue;
        }
        const double sign = (lambda < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
        s.coefficients[k] = sign * std::exp(static_cast<double>(k) * log_l - lfk);
    }
    return s;
}

/// Relative residual of D N(lambda x^beta) = lambda N(lambda x^beta), with D applied to the
/// truncated coefficient list and the right side summed independently by n_function.
inline double eigenfunction_residual(double lambda, double x, const DeformationParams& p, std::size_t k_max) {
    if (!(x > 0.0)) throw ParameterError("eigenfunction_residual: x must be > 0");
    if (lambda == 0.0) throw ParameterError("eigenfunction_residual: lambda must be nonzero");
    const PowerSeries series = deformed_exponential_series(lambda, p, k_max);
    const auto full = series.evaluate(x);
    const double last = std::fabs(series.coefficients.back()) * std::pow(x, p.beta() * static_cast<double>(k_max));
    if (!(last <= 1e-13 * std::max(1.0, std::fabs(full.value)))) {
        throw ConvergenceError("eigenfunction_residual: k_max = " + std::to_string(k_max) +
                               " leaves a truncation tail above tolerance");
    }
    const double lhs = deformed_derivative(series, p).evaluate(x).value;
    const double rhs = lambda * n_function(lambda * std::pow(x, p.beta()), p).real();
    return std::fabs(lhs - rhs) / std::fabs(rhs);
}

}  // namespace wcs
