#pragma once

// Statistics of the coherent states |z> = N(|z|^2)^{-1/2} sum_n z^n / sqrt([n]!) |n>,
// and position-space wavefunctions of the deformed oscillator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "wcs/algebra.hpp"
#include "wcs/errors.hpp"
#include "wcs/gamma_core.hpp"
#include "wcs/special_series.hpp"
#include "wcs/summation.hpp"

namespace wcs {

class CoherentLabel {
public:
    CoherentLabel(std::complex<double> z) : z_(z), x_(std::norm(z)) {}  // NOLINT: implicit by intent
    CoherentLabel(double re, double im = 0.0) : CoherentLabel(std::complex<double>(re, im)) {}

    /// Real label with |z|^2 = x.
    static CoherentLabel from_intensity(double x) {
        if (!(x >= 0.0)) throw ParameterError("|z|^2 must be >= 0");
        return CoherentLabel(std::sqrt(x));
    }

    std::complex<double> z() const { return z_; }
    double x() const { return x_; }

private:
    std::complex<double> z_;
    double x_;
};

struct PhotonDistribution {
    std::vector<double> probabilities;
    std::size_t cutoff = 0;
    double tail_mass = 0.0;
};

struct QuadratureStats {
    std::uint64_t n = 0;
    double var_q = 0.0;
    double var_p = 0.0;
    double product = 0.0;
};

struct ContinuityCheck {
    double direct = 0.0;  // sum_n |c_n(z1) - c_n(z2)|^2
    double kernel = 0.0;  // 2 (1 - Re <z1|z2>)
    double defect = 0.0;  // |direct - kernel|
};

struct WaveSample {
    double value = 0.0;
    bool cancellation = false;
    std::size_t terms_used = 0;
};

inline constexpr std::size_t kDefaultPhotonCap = 1000000;
inline constexpr std::uint64_t kDefaultExcitedCap = 12;

// ---------------------------------------------------------------- photon statistics

/// p(n) = x^n / ([n]! N(x)) given ln N(x).
inline double photon_pdf_given_log_norm(std::uint64_t n, double x, double log_norm, const DeformationParams& p) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(n) * std::log(x) - gen_factorial(n, p).log_abs - log_norm);
}

inline double photon_pdf(std::uint64_t n, const CoherentLabel& z, const DeformationParams& p) {
    const double x = z.x();
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return photon_pdf_given_log_norm(n, x, log_n_function(x, p), p);
}

inline PhotonDistribution photon_distribution(const CoherentLabel& z, const DeformationParams& p, double tail_tol,
                                              std::size_t max_cutoff = kDefaultPhotonCap) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw ParameterError("tail tolerance must lie in (0, 1)");
    PhotonDistribution out;
    const double x = z.x();
    if (x == 0.0) {
        out.probabilities = {1.0};
        return out;
    }
    const double log_x = std::log(x);
    const double log_norm = log_n_function(x, p);
    LogFactorialSequence lf(p);
    for (std::size_t n = 0; n <= max_cutoff; ++n) {
        if (n > 0) lf.next();
        const double pn = std::exp(static_cast<double>(n) * log_x - lf.value() - log_norm);
        out.probabilities.push_back(pn);
        const double ratio = x / box_value(n + 1, p);
        if (ratio < 1.0) {
            const double tail = pn * ratio / (1.0 - ratio);
            if (tail <= tail_tol) {
                out.cutoff = n;
                out.tail_mass = tail;
                return out;
            }
        }
    }
    throw ConvergenceError("photon_distribution: cutoff cap " + std::to_string(max_cutoff) + " exceeded");
}

/// <z1|z2> = N(conj(z1) z2) / sqrt(N(|z1|^2) N(|z2|^2)).
inline std::complex<double> overlap(const CoherentLabel& z1, const CoherentLabel& z2, const DeformationParams& p) {
    const double log_scale = 0.5 * (log_n_function(z1.x(), p) + log_n_function(z2.x(), p));
    return detail::n_series(std::conj(z1.z()) * z2.z(), p, kDefaultSeriesTol, kDefaultMaxTerms, log_scale).value;
}

/// Squared distance between two coherent states, by amplitudes and by the kernel.
inline ContinuityCheck continuity_defect(const CoherentLabel& z1, const CoherentLabel& z2,
                                         const DeformationParams& p) {
    struct Amp {
        double log_r, theta, half_log_norm, x;
    };
    auto make = [&](const CoherentLabel& z) {
        return Amp{z.x() > 0.0 ? 0.5 * std::log(z.x()) : -INFINITY, std::arg(z.z()), 0.5 * log_n_function(z.x(), p),
                   z.x()};
    };
    const Amp a1 = make(z1), a2 = make(z2);
    auto amplitude = [](const Amp& a, std::size_t n, double half_log_fact) {
        if (n == 0) return std::complex<double>(std::exp(-a.half_log_norm), 0.0);
        if (a.x == 0.0) return std::complex<double>(0.0, 0.0);
        const double nn = static_cast<double>(n);
        return std::polar(std::exp(nn * a.log_r - half_log_fact - a.half_log_norm), nn * a.theta);
    };
    CompensatedSum direct;
    LogFactorialSequence lf(p);
    int small_run = 0;
    const double xmax = std::max(z1.x(), z2.x());
    for (std::size_t n = 0; n < kDefaultMaxTerms; ++n) {
        if (n > 0) lf.next();
        const double hl = 0.5 * lf.value();
        const auto c1 = amplitude(a1, n, hl), c2 = amplitude(a2, n, hl);
        direct.add(std::norm(c1 - c2));
        const double mass = std::norm(c1) + std::norm(c2);
        small_run = (mass < 1e-32) ? small_run + 1 : 0;
        if (small_run >= 3 && xmax < box_value(n + 1, p)) {
            ContinuityCheck out;
            out.direct = direct.value();
            out.kernel = 2.0 * (1.0 - overlap(z1, z2, p).real());
            out.defect = std::fabs(out.direct - out.kernel);
            return out;
        }
    }
    throw ConvergenceError("continuity_defect: amplitude sum did not converge");
}

/// x^r N^{(r)}(x) / N(x).
inline double normally_ordered_moment(unsigned r, const CoherentLabel& z, const DeformationParams& p) {
    if (r == 0) throw ParameterError("normally_ordered_moment: r must be >= 1");
    const double x = z.x();
    if (x == 0.0) return 0.0;
    const double log_deriv = detail::log_derivative_series(x, r, p, kDefaultSeriesTol, kDefaultMaxTerms).log_value;
    return std::exp(static_cast<double>(r) * std::log(x) + log_deriv - log_n_function(x, p));
}

/// Q_z = (m2 - m1^2) / m1 with m_r the normally ordered moments.
inline double mandel_qz(const CoherentLabel& z, const DeformationParams& p) {
    const double x = z.x();
    if (x < 1e-12) {
        // removable singularity: Q_z = x (2 a2 / a1 - a1) + O(x^2), a_k = 1 / [k]!
        const double a1 = std::exp(-gen_factorial(1, p).log_abs);
        const double a2 = std::exp(-gen_factorial(2, p).log_abs);
        return x * (2.0 * a2 / a1 - a1);
    }
    const double m1 = normally_ordered_moment(1, z, p);
    const double m2 = normally_ordered_moment(2, z, p);
    return (m2 - m1 * m1) / m1;
}

/// Q_M = (<[N]^2> - <[N]>^2) / <[N]> - 1 over the photon distribution.
inline double mandel_qm(const CoherentLabel& z, const DeformationParams& p) {
    const double x = z.x();
    if (x < 1e-12) {
        // <[N]^k> -> [1]^k p(1), so Q_M -> [1] - 1
        return box_value(1, p) - 1.0;
    }
    const double log_x = std::log(x);
    const double log_norm = log_n_function(x, p);
    CompensatedSum s0, s1, s2;
    LogFactorialSequence lf(p);
    int small_run = 0;
    for (std::size_t n = 0; n < kDefaultPhotonCap; ++n) {
        if (n > 0) lf.next();
        const double pn = std::exp(static_cast<double>(n) * log_x - lf.value() - log_norm);
        const double b = box_value(n, p);
        s0.add(pn);
        s1.add(b * pn);
        s2.add(b * b * pn);
        small_run = (b * b * pn < 1e-18 * s2.value()) ? small_run + 1 : 0;
        if (small_run >= 3 && x < box_value(n + 1, p)) {
            const double e1 = s1.value() / s0.value();
            const double e2 = s2.value() / s0.value();
            return (e2 - e1 * e1) / e1 - 1.0;
        }
    }
    throw ConvergenceError("mandel_qm: photon sum cap exceeded");
}

// ---------------------------------------------------------------- quadratures

inline QuadratureStats quadrature_stats(std::uint64_t n, const DeformationParams& p, const PhysicalScales& s = {}) {
    const double c = commutator_diagonal(n, p);
    if (!(c > 0.0)) {
        throw RangeError("quadrature_stats: [n+1] - [n] is not positive at n = " + std::to_string(n));
    }
    QuadratureStats q;
    q.n = n;
    q.var_q = s.hbar / (2.0 * s.mass * s.omega) * c;
    q.var_p = s.hbar * s.mass * s.omega / 2.0 * c;
    q.product = 0.5 * s.hbar * c;
    return q;
}

/// (hbar / 2) [1].
inline double vacuum_uncertainty(const DeformationParams& p, const PhysicalScales& s = {}) {
    return 0.5 * s.hbar * box_value(1, p);
}

// ---------------------------------------------------------------- wavefunctions

namespace detail {

inline double ground_prefactor(const PhysicalScales& s) {
    return std::pow(s.mass * s.omega / (std::numbers::pi * s.hbar), 0.25);
}

// Number of even-lattice terms a_n x^{2 beta n} needed at x.
inline WaveSample ground_sum(double x, const DeformationParams& p, const PhysicalScales& s, double tol,
                             std::size_t max_terms) {
    if (!(x >= 0.0)) throw ParameterError("wavefunctions are defined for x >= 0 only");
    if (!(tol > 0.0)) throw ParameterError("series tolerance must be positive");
    const double pref = ground_prefactor(s);
    if (x == 0.0) return {pref, false, 1};
    const double log_k = std::log(s.mass * s.omega / s.hbar);
    const double log_x2b = 2.0 * p.beta() * std::log(x);
    CompensatedSum sum;
    sum.add(1.0);
    double peak = 1.0;
    double log_dfact = 0.0;
    int small_run = 0;
    for (std::size_t n = 1; n < max_terms; ++n) {
        log_dfact += log_box(2 * n, p);
        const double nn = static_cast<double>(n);
        const double mag = std::exp(nn * (log_k + log_x2b) - log_dfact);
        sum.add(n % 2 == 1 ? -mag : mag);
        peak = std::max(peak, std::fabs(sum.value()));
        small_run = (mag < tol * std::max(1.0, std::fabs(sum.value()))) ? small_run + 1 : 0;
        if (small_run >= 3 && std::exp(log_k + log_x2b) < box_value(2 * n + 2, p)) {
            const double v = sum.value();
            return {pref * v, peak > kCancellationRatio * std::fabs(v), n + 1};
        }
    }
    throw ConvergenceError("ground_wavefunction: series did not converge at x = " + std::to_string(x));
}

}  // namespace detail

/// <x|0> = (m w / pi hbar)^{1/4} sum_n (-m w / hbar)^n x^{2 beta n} / [2n]!!, x >= 0.
inline WaveSample ground_wavefunction(double x, const DeformationParams& p, const PhysicalScales& s = {},
                                      double tol = kDefaultSeriesTol, std::size_t max_terms = kDefaultMaxTerms) {
    return detail::ground_sum(x, p, s, tol, max_terms);
}

/// Ground state as coefficients on the x^beta lattice, with n_terms even-index terms.
inline PowerSeries ground_state_series(const DeformationParams& p, const PhysicalScales& s, std::size_t n_terms) {
    PowerSeries out;
    out.beta = p.beta();
    out.coefficients.assign(2 * n_terms - 1, 0.0);
    const double pref = detail::ground_prefactor(s);
    const double log_k = std::log(s.mass * s.omega / s.hbar);
    double log_dfact = 0.0;
    out.coefficients[0] = pref;
    for (std::size_t n = 1; n < n_terms; ++n) {
        log_dfact += log_box(2 * n, p);
        const double mag = pref * std::exp(static_cast<double>(n) * log_k - log_dfact);
        out.coefficients[2 * n] = n % 2 == 1 ? -mag : mag;
    }
    return out;
}

/// A^dag = sqrt(m w / 2 hbar) x^beta - sqrt(hbar / 2 m w) D, as a coefficient map.
inline PowerSeries apply_creation(const PowerSeries& in, const DeformationParams& p, const PhysicalScales& s) {
    const double up = std::sqrt(s.mass * s.omega / (2.0 * s.hbar));
    const double down = std::sqrt(s.hbar / (2.0 * s.mass * s.omega));
    PowerSeries out;
    out.beta = in.beta;
    out.coefficients.assign(in.size() + 1, 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double v = 0.0;
        if (k >= 1) v += up * in.coefficients[k - 1];
        if (k + 1 < in.size()) v -= down * in.coefficients[k + 1] * box_value(k + 1, p);
        out.coefficients[k] = v;
    }
    return out;
}

/// <x|k> = (A^dag)^k <x|0> / sqrt([k]!), by exact coefficient algebra.
inline WaveSample excited_wavefunction(std::uint64_t k, double x, const DeformationParams& p,
                                       const PhysicalScales& s = {}, double tol = kDefaultSeriesTol,
                                       std::uint64_t k_cap = kDefaultExcitedCap) {
    if (k > k_cap) {
        throw ParameterError("excited_wavefunction: k = " + std::to_string(k) + " exceeds cap " +
                             std::to_string(k_cap));
    }
    const WaveSample ground = detail::ground_sum(x, p, s, tol, kDefaultMaxTerms);
    if (k == 0) return ground;
    PowerSeries series = ground_state_series(p, s, ground.terms_used + k + 3);
    for (std::uint64_t i = 0; i < k; ++i) series = apply_creation(series, p, s);
    // drop the top 2k coefficients, which carry the truncation of the ground series
    series.coefficients.resize(series.size() - 2 * k);
    const auto ev = series.evaluate(x);
    const double norm = std::exp(-0.5 * gen_factorial(k, p).log_abs);
    return {ev.value * norm, ev.cancellation || ground.cancellation, series.size()};
}

/// sqrt(m w / 2 hbar) 2 x^beta / sqrt([1]!) <x|0>.
inline double first_excited_closed_form(double x, const DeformationParams& p, const PhysicalScales& s = {},
                                        double tol = kDefaultSeriesTol) {
    const double g = ground_wavefunction(x, p, s, tol).value;
    return std::sqrt(s.mass * s.omega / (2.0 * s.hbar)) * 2.0 * std::pow(x, p.beta()) /
           std::sqrt(std::exp(gen_factorial(1, p).log_abs)) * g;
}

}  // namespace wcs
