#pragma once

// Natural log of the gamma function on the positive real axis.
//
// Three regimes:
//   x < 3       rational minimax approximations around the roots at 1 and 2
//               (coefficients published with Boost.Math's lgamma_small, 64-bit
//               set, Boost Software License 1.0), so that relative accuracy
//               survives near lnGamma(1) = lnGamma(2) = 0.
//   3 <= x < 15 downward recurrence onto [2, 3).
//   x >= 15     Stirling series with 8 Bernoulli terms.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wcs/errors.hpp"

namespace wcs {

namespace detail {

template <std::size_t N>
constexpr double horner(const std::array<double, N>& c, double x) {
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) r = r * x + c[i];
    return r;
}

// lnGamma on [1, 3); zm1 = x - 1 and zm2 = x - 2 are passed exactly.
inline double log_gamma_1_3(double x, double zm1, double zm2) {
    if (zm1 == 0.0 || zm2 == 0.0) return 0.0;
    if (x >= 2.0) {
        // lnGamma(x) = (x-2)(x+1)(Y + R(x-2))
        static constexpr std::array<double, 7> P{
            -0.180355685678449379109e-1, 0.25126649619989678683e-1,
            0.494103151567532234274e-1,  0.172491608709613993966e-1,
            -0.259453563205438108893e-3, -0.541009869215204396339e-3,
            -0.324588649825948492091e-4};
        static constexpr std::array<double, 8> Q{
            0.1e1,                       0.196202987197795200688e1,
            0.148019669424231326694e1,   0.541391432071720958364e0,
            0.988504251128010129477e-1,  0.82130967464889339326e-2,
            0.224936291922115757597e-3, -0.223352763208617092964e-6};
        constexpr double Y = 0.158963680267333984375e0;
        const double r = zm2 * (x + 1.0);
        const double R = horner(P, zm2) / horner(Q, zm2);
        return r * Y + r * R;
    }
    if (x <= 1.5) {
        // lnGamma(x) = (x-1)(x-2)(Y + R(x-1))
        static constexpr std::array<double, 7> P{
            0.490622454069039543534e-1, -0.969117530159521214579e-1,
            -0.414983358359495381969e0, -0.406567124211938417342e0,
            -0.158413586390692192217e0, -0.240149820648571559892e-1,
            -0.100346687696279557415e-2};
        static constexpr std::array<double, 7> Q{
            0.1e1,                      0.302349829846463038743e1,
            0.348739585360723852576e1,  0.191415588274426679201e1,
            0.507137738614363510846e0,  0.577039722690451849648e-1,
            0.195768102601107189171e-2};
        constexpr double Y = 0.52815341949462890625;
        const double R = horner(P, zm1) / horner(Q, zm1);
        const double prefix = zm1 * zm2;
        return prefix * Y + prefix * R;
    }
    // lnGamma(x) = (2-x)(1-x)(Y + R(2-x))
    static constexpr std::array<double, 6> P{
        -0.292329721830270012337e-1, 0.144216267757192309184e0,
        -0.142440390738631274135e0,  0.542809694055053558157e-1,
        -0.850535976868336437746e-2, 0.431171342679297331241e-3};
    static constexpr std::array<double, 7> Q{
        0.1e1,                       -0.150169356054485044494e1,
        0.846973248876495016101e0,   -0.220095151814995745555e0,
        0.25582797155975869989e-1,   -0.100666795539143372762e-2,
        -0.827193521891290553639e-6};
    constexpr double Y = 0.452017307281494140625;
    const double r = zm2 * zm1;
    const double R = horner(P, -zm2) / horner(Q, -zm2);
    return r * Y + r * R;
}

// Stirling correction sum_k B_{2k} / (2k (2k-1) x^{2k-1}), k = 1..8.
inline double stirling_series(double x) {
    static constexpr std::array<double, 8> C{
        1.0 / 12.0,     -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,   -691.0 / 360360.0,    1.0 / 156.0,  -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    for (std::size_t k = C.size(); k-- > 0;) series = series * inv2 + C[k];
    return series * inv;
}

inline double log_gamma_stirling(double x) {
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + stirling_series(x);
}

}  // namespace detail

/// ln Gamma(x) for x > 0. Throws ParameterError on x <= 0 or NaN.
inline double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw ParameterError("log_gamma: argument must be positive, got " + std::to_string(x));
    }
    if (std::isinf(x)) return x;
    if (x < std::numeric_limits<double>::epsilon()) return -std::log(x);
    if (x < 1.0) {
        // lnGamma(x) = lnGamma(x + 1) - ln x; x + 1 - 1 is exact enough here
        const double xp1 = x + 1.0;
        return detail::log_gamma_1_3(xp1, x, x - 1.0) - std::log(x);
    }
    if (x < 3.0) return detail::log_gamma_1_3(x, x - 1.0, x - 2.0);
    if (x < 15.0) {
        double z = x;
        double prod = 1.0;
        while (z >= 3.0) {
            z -= 1.0;
            prod *= z;
        }
        return detail::log_gamma_1_3(z, z - 1.0, z - 2.0) + std::log(prod);
    }
    return detail::log_gamma_stirling(x);
}

/// ln Gamma(y + d) - ln Gamma(y) for y > 0, y + d > 0, without forming either log-gamma.
///
/// Both arguments are shifted above 15 by the recurrence, where the Stirling forms are
/// subtracted analytically: (y - 1/2) log1p(d/y) + d ln(y + d) - d + series difference.
/// The result keeps full relative accuracy even when d is tiny next to y.
inline double log_gamma_ratio(double y, double d) {
    if (!(y > 0.0) || !(y + d > 0.0)) {
        throw ParameterError("log_gamma_ratio: arguments must be positive, got y = " + std::to_string(y) +
                             ", y + d = " + std::to_string(y + d));
    }
    if (d == 0.0) return 0.0;
    double shift_sum = 0.0;
    while (std::min(y, y + d) < 15.0) {
        // lnG(y+d) - lnG(y) = [lnG(y+1+d) - lnG(y+1)] - ln((y+d)/y)
        shift_sum -= std::log1p(d / y);
        y += 1.0;
    }
    const double yd = y + d;
    return shift_sum + (y - 0.5) * std::log1p(d / y) + d * std::log(yd) - d +
           (detail::stirling_series(yd) - detail::stirling_series(y));
}

/// Gamma(x) for x > 0, through log_gamma.
inline double gamma_fn(double x) { return std::exp(log_gamma(x)); }

}  // namespace wcs
