#pragma once

// Determinacy and completeness of the coherent-state family: the Carleman test on
// the asymptotic moments, Hankel-Hadamard positivity, the weight functions
// U~(x) = pi U(x) / N(x) for the Wright (alpha = 1) and alpha = 1 - beta families
// plus the closed-form Mittag-Leffler weight at beta = 1, and quadrature checks of
//   int_0^inf x^n U~(x) dx = [n]!.
//
// The alpha = beta family has only a Fox-H representation and is not evaluated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "wcs/errors.hpp"
#include "wcs/gamma_core.hpp"
#include "wcs/quadrature.hpp"
#include "wcs/special_series.hpp"
#include "wcs/summation.hpp"

namespace wcs {

// ---------------------------------------------------------------- Carleman

struct CarlemanVerdict {
    double exponent = 0.0;  // (alpha + beta) / 2
    bool determinate = false;
    bool series_divergent = false;
};

/// Verdict for sum_n n^{-exponent}: divergent, hence determinate, iff exponent <= 1.
inline CarlemanVerdict classify_exponent(double exponent) {
    const bool divergent = exponent <= 1.0;
    return {exponent, divergent, divergent};
}

inline CarlemanVerdict carleman_classify(const DeformationParams& p) {
    return classify_exponent(0.5 * (p.alpha() + p.beta()));
}

/// Partial sum over n = 1..n_max of m_n^{-1/(2n)} for the asymptotic moments
/// m_n = e^{-2 e n} (beta n)^{2 e n}, where e is the Carleman exponent. Each term
/// is e^{e} (beta n)^{-e}.
inline double carleman_partial_sum(double exponent, double beta, std::uint64_t n_max) {
    CompensatedSum s;
    const double c = std::exp(exponent);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        s.add(c * std::pow(beta * static_cast<double>(n), -exponent));
    }
    return s.value();
}

// ---------------------------------------------------------------- Hankel-Hadamard

struct HankelResult {
    std::size_t size = 0;
    unsigned offset = 0;
    int sign = 0;
    double scaled_det = 0.0;   // det(D M D), D_ii = m_{2i+offset}^{-1/2}
    double log_abs_det = 0.0;  // ln |det M|
};

/// Determinant of the moment matrix M_ij = [i + j + offset]!, after symmetric rescaling
/// to entries of order one.
inline HankelResult hankel_hadamard(const DeformationParams& p, std::size_t size, unsigned offset) {
    if (size == 0) throw ParameterError("hankel_hadamard: size must be >= 1");
    if (offset > 1) throw ParameterError("hankel_hadamard: offset must be 0 or 1");
    const std::size_t n_moments = 2 * size - 1 + offset;
    std::vector<double> lm(n_moments);
    LogFactorialSequence seq(p);
    lm[0] = 0.0;
    for (std::size_t k = 1; k < n_moments; ++k) lm[k] = seq.next();

    std::vector<double> a(size * size);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            a[i * size + j] = std::exp(lm[i + j + offset] - 0.5 * (lm[2 * i + offset] + lm[2 * j + offset]));
        }
    }
    // LU with partial pivoting
    int sign = 1;
    double log_abs = 0.0;
    for (std::size_t c = 0; c < size; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < size; ++r) {
            if (std::fabs(a[r * size + c]) > std::fabs(a[piv * size + c])) piv = r;
        }
        if (a[piv * size + c] == 0.0) {
            throw RangeError("hankel_hadamard: scaled determinant underflows at size " + std::to_string(size));
        }
        if (piv != c) {
            for (std::size_t k = 0; k < size; ++k) std::swap(a[c * size + k], a[piv * size + k]);
            sign = -sign;
        }
        const double d = a[c * size + c];
        if (d < 0.0) sign = -sign;
        log_abs += std::log(std::fabs(d));
        for (std::size_t r = c + 1; r < size; ++r) {
            const double f = a[r * size + c] / d;
            for (std::size_t k = c; k < size; ++k) a[r * size + k] -= f * a[c * size + k];
        }
    }
    HankelResult out;
    out.size = size;
    out.offset = offset;
    out.sign = sign;
    if (log_abs < LogValue::min_log() || log_abs > LogValue::max_log()) {
        throw RangeError("hankel_hadamard: scaled determinant outside double range");
    }
    out.scaled_det = sign * std::exp(log_abs);
    double shift = 0.0;
    for (std::size_t i = 0; i < size; ++i) shift += lm[2 * i + offset];
    out.log_abs_det = log_abs + shift;
    return out;
}

// ---------------------------------------------------------------- weight functions

struct WeightSample {
    double x = 0.0;
    double u_tilde = 0.0;
    double abs_err_est = 0.0;
    bool endpoint_singular = false;  // power-law endpoint handled by substitution
    bool negative = false;
};

namespace detail {

inline quad::Options weight_options(double tol) {
    if (!(tol > 0.0)) throw ParameterError("quadrature tolerance must be positive");
    return {tol, 1e-13, 4000};
}

inline WeightSample finish_sample(double x, double prefactor, const quad::Result& r, const quad::Options& opt,
                                  bool singular, const char* what, double magnitude = 0.0) {
    if (!r.converged) {
        throw ConvergenceError(std::string(what) + ": quadrature did not converge at x = " + std::to_string(x));
    }
    WeightSample s;
    s.x = x;
    s.u_tilde = prefactor * r.value;
    s.abs_err_est = std::fabs(prefactor) * r.abs_error;
    // `magnitude` is the size of the pieces combined into r.value, when they cancel
    const double allowed =
        std::fabs(prefactor) * std::max(opt.abs_tol, opt.rel_tol * std::max(std::fabs(r.value), magnitude));
    if (s.abs_err_est > allowed) {
        throw ConvergenceError(std::string(what) + ": error estimate above tolerance at x = " + std::to_string(x));
    }
    s.endpoint_singular = singular;
    s.negative = s.u_tilde < 0.0;
    if (!std::isfinite(s.u_tilde)) throw RangeError(std::string(what) + ": non-finite weight");
    return s;
}

// Wright integrand on the log scale: t = e^s, g(s) = exp(psi(s)),
// psi(s) = (nu/beta - 1) s - e^{s/beta} - (x/beta) e^{-s}. psi is strictly concave.
struct WrightKernel {
    double x, beta, nu;

    double psi(double s) const {
        return (nu / beta - 1.0) * s - std::exp(s / beta) - (x / beta) * std::exp(-s);
    }
    double dpsi(double s) const {
        return (nu / beta - 1.0) - std::exp(s / beta) / beta + (x / beta) * std::exp(-s);
    }
    double d2psi(double s) const { return -std::exp(s / beta) / (beta * beta) - (x / beta) * std::exp(-s); }

    double mode() const {
        double lo = -50.0, hi = 50.0;
        while (dpsi(lo) < 0.0) lo *= 2.0;
        while (dpsi(hi) > 0.0) hi *= 2.0;
        for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
            const double mid = 0.5 * (lo + hi);
            (dpsi(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // s where psi has fallen by `drop` below its maximum, on either side of the mode.
    double edge(double mode, double dir, double drop) const {
        const double target = psi(mode) - drop;
        double step = std::max(1.0, 1.0 / std::sqrt(-d2psi(mode)));
        double inner = mode, outer = mode + dir * step;
        while (psi(outer) > target) {
            inner = outer;
            step *= 2.0;
            outer = mode + dir * step;
        }
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (inner + outer);
            (psi(mid) > target ? inner : outer) = mid;
        }
        return outer;
    }

    std::vector<double> breaks_t(double mode) const {
        const double width = 1.0 / std::sqrt(-d2psi(mode));
        std::vector<double> b;
        for (double k : {-16.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
            b.push_back(std::exp(mode + k * width));
        }
        return b;
    }
};

inline void check_wright_args(double x, double beta, double nu) {
    if (!(x > 0.0)) throw ParameterError("weight_wright: x must be > 0");
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("weight_wright: beta must lie in (0, 1]");
    if (!(nu > 0.0)) throw ParameterError("weight_wright: nu must be > 0 (Gamma(nu) pole)");
}

}  // namespace detail

/// U~_{1,beta,nu}(x) = 1/(beta^2 Gamma(nu)) int_0^inf t^{nu/beta - 2} exp(-t^{1/beta} - x/(beta t)) dt,
/// integrated over u in (0, 1) with t = u / (1 - u).
inline WeightSample weight_wright(double x, double beta, double nu, const quad::Options& opt) {
    detail::check_wright_args(x, beta, nu);
    const detail::WrightKernel kernel{x, beta, nu};
    const double mode = kernel.mode();
    const auto breaks = kernel.breaks_t(mode);
    const double log_prefactor = -2.0 * std::log(beta) - log_gamma(nu);
    // Scale by the peak value so the quadrature works on O(1) numbers.
    const double peak = kernel.psi(mode);
    auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double lt = std::log(t);
        return std::exp(kernel.psi(lt) - lt - peak);
    };
    quad::Options scaled = opt;
    scaled.abs_tol = opt.abs_tol * std::exp(-peak - log_prefactor);
    const auto r = quad::integrate_half_line(f, scaled, breaks);
    return detail::finish_sample(x, std::exp(log_prefactor + peak), r, scaled, nu / beta < 1.0, "weight_wright");
}

inline WeightSample weight_wright(double x, double beta, double nu, double tol = 1e-10) {
    return weight_wright(x, beta, nu, detail::weight_options(tol));
}

/// The same integral through t = e^s on a window where the log-integrand is within
/// 745 of its maximum; an independent cross-check of weight_wright.
inline WeightSample weight_wright_exp_substitution(double x, double beta, double nu, const quad::Options& opt) {
    detail::check_wright_args(x, beta, nu);
    const detail::WrightKernel kernel{x, beta, nu};
    const double mode = kernel.mode();
    const double s_lo = kernel.edge(mode, -1.0, 745.0);
    const double s_hi = kernel.edge(mode, +1.0, 745.0);
    const double peak = kernel.psi(mode);
    const double log_prefactor = -2.0 * std::log(beta) - log_gamma(nu);
    auto g = [&](double s) { return std::exp(kernel.psi(s) - peak); };
    quad::Options scaled = opt;
    scaled.abs_tol = opt.abs_tol * std::exp(-peak - log_prefactor);
    const auto r = quad::integrate(g, s_lo, s_hi, scaled, std::vector<double>{mode});
    return detail::finish_sample(x, std::exp(log_prefactor + peak), r, scaled, nu / beta < 1.0,
                                 "weight_wright_exp_substitution");
}

inline WeightSample weight_wright_exp_substitution(double x, double beta, double nu, double tol = 1e-10) {
    return weight_wright_exp_substitution(x, beta, nu, detail::weight_options(tol));
}

namespace detail {

inline void check_omb_args(double x, double beta, double nu) {
    if (!(x > 0.0)) throw ParameterError("weight_one_minus_beta: x must be > 0");
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("weight_one_minus_beta: beta must lie in (0, 1]");
    if (!(nu > -beta)) throw ParameterError("weight_one_minus_beta: nu must exceed alpha - 1 = -beta");
    if (nu >= 0.0 && nu == std::floor(nu)) {
        throw ParameterError("weight_one_minus_beta: nu is a nonnegative integer (Gamma(-nu) pole)");
    }
    if (nu > 1.0) {
        throw ParameterError("weight_one_minus_beta: nu > 1 is outside the regularized range (-beta, 1)");
    }
}

inline double gamma_signed(double x) {
    // Gamma on (-1, 0) U (0, inf)
    if (x > 0.0) return gamma_fn(x);
    return gamma_fn(x + 1.0) / x;
}

}  // namespace detail

/// U~_{1-beta,beta,nu}(x) = Gamma(beta)/(beta^2 Gamma(beta+nu) Gamma(-nu))
///     int_1^inf (t^{1/beta} - 1)^{-nu-1} t^{1/beta - 1} e^{-x t / beta} dt.
///
/// With u = t^{1/beta} the integral becomes beta int_1^inf (u - 1)^{-nu-1} e^{-(x/beta) u^beta} du.
/// For nu in (-beta, 0) it converges and u = 1 + w^{-1/nu} removes the endpoint power.
/// For nu in (0, 1) it diverges at u = 1 and is taken as its Hadamard finite part, the
/// analytic continuation in nu under which the Mellin moments still equal [s-1]!.
inline WeightSample weight_one_minus_beta(double x, double beta, double nu, const quad::Options& opt) {
    detail::check_omb_args(x, beta, nu);
    const double c = x / beta;
    const double prefactor = gamma_fn(beta) / (beta * gamma_fn(beta + nu) * detail::gamma_signed(-nu));
    quad::Options scaled = opt;
    scaled.abs_tol = opt.abs_tol / std::fabs(prefactor);

    // u - 1 values where c u^beta reaches a few e-folds; used as breakpoints
    auto du_at = [&](double level) {
        const double u = std::pow(level / c, 1.0 / beta);
        return u - 1.0;
    };

    if (nu < 0.0) {
        const double m = -1.0 / nu;
        auto g = [&](double w) { return m * std::exp(-c * std::exp(beta * std::log1p(std::pow(w, m)))); };
        std::vector<double> breaks;
        for (double level : {1.0, 4.0, 16.0, 64.0}) {
            const double d = du_at(level);
            if (d > 0.0) breaks.push_back(std::pow(d, 1.0 / m));
        }
        const auto r = quad::integrate_half_line(g, scaled, breaks);
        return detail::finish_sample(x, prefactor, r, scaled, true, "weight_one_minus_beta");
    }

    // finite part: int_1^2 (u-1)^{-nu-1} (f(u) - f(1)) du - f(1)/nu + int_2^inf (u-1)^{-nu-1} f(u) du
    const double f1 = std::exp(-c);
    const double m = 1.0 / (1.0 - nu);
    auto near = [&](double w) {
        if (w <= 0.0) return -m * c * beta * f1;
        const double wm = std::pow(w, m);
        const double diff = f1 * std::expm1(-c * std::expm1(beta * std::log1p(wm)));
        return m * std::pow(w, -m * nu - 1.0) * diff;
    };
    auto far = [&](double t) {
        const double u = 2.0 + t;
        return std::pow(u - 1.0, -nu - 1.0) * std::exp(-c * std::pow(u, beta));
    };
    std::vector<double> far_breaks;
    for (double level : {1.0, 4.0, 16.0, 64.0}) {
        const double d = du_at(level) - 1.0;
        if (d > 0.0) far_breaks.push_back(d);
    }
    const double pole = f1 / nu;
    scaled.abs_tol = std::max(scaled.abs_tol, 0.25 * scaled.rel_tol * pole);
    const auto r_near = quad::integrate(near, 0.0, 1.0, scaled);
    const auto r_far = quad::integrate_half_line(far, scaled, far_breaks);
    quad::Result r;
    r.value = r_near.value - pole + r_far.value;
    r.abs_error = r_near.abs_error + r_far.abs_error;
    r.converged = r_near.converged && r_far.converged;
    r.evaluations = r_near.evaluations + r_far.evaluations;
    r.intervals = r_near.intervals + r_far.intervals;
    const double magnitude = std::fabs(r_near.value) + pole + std::fabs(r_far.value);
    return detail::finish_sample(x, prefactor, r, scaled, true, "weight_one_minus_beta", magnitude);
}

inline WeightSample weight_one_minus_beta(double x, double beta, double nu, double tol = 1e-10) {
    return weight_one_minus_beta(x, beta, nu, detail::weight_options(tol));
}

/// True if the alpha = 1 - beta weight is negative anywhere on the grid.
inline bool one_minus_beta_sign_anomaly(double beta, double nu, const std::vector<double>& grid,
                                        double tol = 1e-10) {
    return std::any_of(grid.begin(), grid.end(),
                       [&](double x) { return weight_one_minus_beta(x, beta, nu, tol).negative; });
}

/// x^nu e^{-x} / Gamma(1 + nu): the weight whose moments are Gamma(n+1+nu)/Gamma(1+nu).
inline WeightSample weight_ml_closed_form(double x, double nu) {
    if (!(x > 0.0)) throw ParameterError("weight_ml_closed_form: x must be > 0");
    if (!(nu > -1.0)) throw ParameterError("weight_ml_closed_form: nu must be > -1");
    WeightSample s;
    s.x = x;
    s.u_tilde = std::exp(nu * std::log(x) - x - log_gamma(1.0 + nu));
    s.endpoint_singular = nu < 0.0;
    return s;
}

/// U(x) = U~(x) N(x) / pi, the resolution-of-unity density.
inline double u_from_u_tilde(const WeightSample& sample, const DeformationParams& p) {
    const double log_norm = log_n_function(sample.x, p);
    if (sample.u_tilde > 0.0) {
        return std::exp(std::log(sample.u_tilde) + log_norm - std::log(std::numbers::pi));
    }
    return sample.u_tilde * std::exp(log_norm) / std::numbers::pi;
}

// ---------------------------------------------------------------- moment verification

enum class WeightFamily { wright, one_minus_beta, ml_closed_form };

inline const char* to_string(WeightFamily f) {
    switch (f) {
        case WeightFamily::wright: return "wright";
        case WeightFamily::one_minus_beta: return "one-minus-beta";
        case WeightFamily::ml_closed_form: return "ml-closed-form";
    }
    return "?";
}

/// A weight family plus its free parameters; alpha is implied by the family.
struct WeightSpec {
    WeightFamily family = WeightFamily::ml_closed_form;
    double beta = 1.0;
    double nu = 0.0;

    double alpha() const {
        switch (family) {
            case WeightFamily::wright: return 1.0;
            case WeightFamily::one_minus_beta: return 1.0 - beta;
            case WeightFamily::ml_closed_form: return 0.0;
        }
        return 0.0;
    }

    DeformationParams params() const { return {alpha(), beta, nu}; }

    void validate() const {
        (void)params();
        switch (family) {
            case WeightFamily::wright: detail::check_wright_args(1.0, beta, nu); break;
            case WeightFamily::one_minus_beta: detail::check_omb_args(1.0, beta, nu); break;
            case WeightFamily::ml_closed_form:
                if (beta != 1.0) throw ParameterError("ml-closed-form weight requires beta = 1");
                if (!(nu > -1.0)) throw ParameterError("ml-closed-form weight requires nu > -1");
                break;
        }
    }

    WeightSample evaluate(double x, const quad::Options& opt) const {
        switch (family) {
            case WeightFamily::wright: return weight_wright(x, beta, nu, opt);
            case WeightFamily::one_minus_beta: return weight_one_minus_beta(x, beta, nu, opt);
            case WeightFamily::ml_closed_form: return weight_ml_closed_form(x, nu);
        }
        throw ParameterError("unknown weight family");
    }

    // Power of the x -> 0 behaviour U~(x) ~ x^gamma (0 when U~(0) is finite).
    double origin_exponent() const {
        switch (family) {
            case WeightFamily::wright: return std::min(0.0, nu / beta - 1.0);
            case WeightFamily::one_minus_beta: return std::min(0.0, nu / beta);
            case WeightFamily::ml_closed_form: return std::min(0.0, nu);
        }
        return 0.0;
    }
    // U~ has a logarithmic singularity at the origin
    bool origin_log() const { return family == WeightFamily::wright && nu == beta; }
};

struct MomentReport {
    std::vector<unsigned> orders;
    std::vector<double> quadrature_moments;
    std::vector<double> target_factorials;
    std::vector<double> rel_errors;
    std::vector<double> truncation_points;

    double max_rel_error() const {
        return rel_errors.empty() ? 0.0 : *std::max_element(rel_errors.begin(), rel_errors.end());
    }
};

struct MomentOptions {
    double outer_rel_tol = 1e-6;
    double inner_rel_tol = 1e-11;
    std::size_t max_weight_evaluations = 4000000;
    double max_truncation = 1e8;
};

/// int_0^inf x^n U~(x) dx for n = 0..n_max, compared against [n]!.
///
/// The origin singularity x^gamma is removed by x = y^m with m = 1/(1 + gamma); the range is
/// then extended by doubling until the integrand bound x^n U~(x) x falls below 1e-16 of the
/// running integral.
inline MomentReport verify_moments(const WeightSpec& weight, unsigned n_max, const MomentOptions& opt = {}) {
    weight.validate();
    const DeformationParams p = weight.params();
    const quad::Options inner{0.0, opt.inner_rel_tol, 4000};
    std::size_t evaluations = 0;
    auto u_tilde = [&](double x) {
        if (x <= 0.0) return 0.0;
        if (++evaluations > opt.max_weight_evaluations) {
            throw ConvergenceError("verify_moments: nested-quadrature budget exceeded");
        }
        return weight.evaluate(x, inner).u_tilde;
    };
    double m_exp = 1.0;
    const double gamma = weight.origin_exponent();
    if (gamma < 0.0) m_exp = 1.0 / (1.0 + gamma);
    if (weight.origin_log()) m_exp = 2.0;

    MomentReport report;
    LogFactorialSequence target(p);
    for (unsigned n = 0; n <= n_max; ++n) {
        if (n > 0) target.next();
        const double nn = static_cast<double>(n);
        auto integrand = [&](double x) { return x == 0.0 ? 0.0 : std::pow(x, nn) * u_tilde(x); };

        double lo = 1.0;
        const quad::Options first{0.0, opt.outer_rel_tol * 1e-2, 2000};
        auto head = quad::integrate(
            [&](double y) {
                if (y <= 0.0) return 0.0;
                const double x = std::pow(y, m_exp);
                return integrand(x) * m_exp * std::pow(y, m_exp - 1.0);
            },
            0.0, std::pow(lo, 1.0 / m_exp), first);
        if (!head.converged) throw ConvergenceError("verify_moments: origin segment did not converge");
        CompensatedSum total;
        total.add(head.value);
        double prev_edge = integrand(lo);
        for (;;) {
            const double hi = 2.0 * lo;
            if (hi > opt.max_truncation) throw ConvergenceError("verify_moments: truncation point runaway");
            const double abs_floor = 1e-3 * opt.outer_rel_tol * std::fabs(total.value());
            const quad::Options seg_opt{abs_floor, opt.outer_rel_tol * 1e-2, 2000};
            const auto seg = quad::integrate(integrand, lo, hi, seg_opt);
            if (!seg.converged) throw ConvergenceError("verify_moments: outer segment did not converge");
            total.add(seg.value);
            const double edge = integrand(hi);
            lo = hi;
            if (edge * hi < 1e-16 * std::fabs(total.value()) && edge <= prev_edge) break;
            prev_edge = edge;
        }
        const double value = total.value();
        const double tgt = std::exp(target.value());
        report.orders.push_back(n);
        report.quadrature_moments.push_back(value);
        report.target_factorials.push_back(tgt);
        report.rel_errors.push_back(std::fabs(value - tgt) / tgt);
        report.truncation_points.push_back(lo);
    }
    return report;
}

}  // namespace wcs
