#pragma once

// Globally adaptive 15-point Gauss-Kronrod quadrature (QUADPACK QK15 nodes and
// error heuristic), plus the two changes of variable used for semi-infinite
// ranges: t = u / (1 - u) onto (0, 1), and t = e^s onto a finite s-window.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "wcs/errors.hpp"

namespace wcs::quad {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_intervals = 2000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment qk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::fabs(half);
    const double fc = f(center);
    double res_gauss = fc * kWg[3];
    double res_kronrod = fc * kWgk[7];
    double res_abs = std::fabs(res_kronrod);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double v1 = f(center - dx), v2 = f(center + dx);
        f1[jtw] = v1;
        f2[jtw] = v2;
        res_gauss += kWg[j] * (v1 + v2);
        res_kronrod += kWgk[jtw] * (v1 + v2);
        res_abs += kWgk[jtw] * (std::fabs(v1) + std::fabs(v2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double v1 = f(center - dx), v2 = f(center + dx);
        f1[jtwm1] = v1;
        f2[jtwm1] = v2;
        res_kronrod += kWgk[jtwm1] * (v1 + v2);
        res_abs += kWgk[jtwm1] * (std::fabs(v1) + std::fabs(v2));
    }
    const double mean = 0.5 * res_kronrod;
    double res_asc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
    }
    const double value = res_kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    double err = std::fabs((res_kronrod - res_gauss) * half);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
    return {a, b, value, err};
}

}  // namespace detail

/// Integrates f over [a, b], starting from the partition given by `breaks`
/// (interior points; anything outside (a, b) is ignored).
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}, std::span<const double> breaks = {}) {
    std::vector<double> pts{a};
    for (double x : breaks) {
        if (x > a && x < b) pts.push_back(x);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::priority_queue<detail::Segment> heap;
    Result out;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto seg = detail::qk15(f, pts[i], pts[i + 1]);
        out.evaluations += 15;
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }
    auto done = [&] { return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };
    while (!done() && heap.size() < opt.max_intervals) {
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
        heap.pop();
        const auto left = detail::qk15(f, worst.a, mid);
        const auto right = detail::qk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of incremental updates.
    total = 0.0;
    total_err = 0.0;
    out.intervals = heap.size();
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = total_err;
    out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
    return out;
}

/// Like integrate, but throws ConvergenceError when the tolerance is not met.
template <class F>
Result integrate_or_throw(F&& f, double a, double b, const Options& opt = {},
                          std::span<const double> breaks = {}, const char* what = "quadrature") {
    auto r = integrate(std::forward<F>(f), a, b, opt, breaks);
    if (!r.converged) {
        throw ConvergenceError(std::string(what) + ": error estimate " + std::to_string(r.abs_error) +
                               " above tolerance after " + std::to_string(r.intervals) + " intervals");
    }
    return r;
}

/// Integral of f over (0, inf) through t = u / (1 - u). `breaks_t` are given in t.
template <class F>
Result integrate_half_line(F&& f, const Options& opt = {}, std::span<const double> breaks_t = {}) {
    std::vector<double> breaks_u;
    breaks_u.reserve(breaks_t.size());
    for (double t : breaks_t) {
        if (t > 0.0 && std::isfinite(t)) breaks_u.push_back(t / (1.0 + t));
    }
    auto g = [&f](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        const double one_minus = 1.0 - u;
        const double t = u / one_minus;
        const double v = f(t);
        return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
    };
    return integrate(g, 0.0, 1.0, opt, breaks_u);
}

/// Integral of f over (t_lo, t_hi) through t = e^s.
template <class F>
Result integrate_log_scale(F&& f, double t_lo, double t_hi, const Options& opt = {},
                           std::span<const double> breaks_t = {}) {
    std::vector<double> breaks_s;
    for (double t : breaks_t) {
        if (t > 0.0) breaks_s.push_back(std::log(t));
    }
    auto g = [&f](double s) {
        const double t = std::exp(s);
        const double v = f(t);
        return v == 0.0 ? 0.0 : v * t;
    };
    return integrate(g, std::log(t_lo), std::log(t_hi), opt, breaks_s);
}

}  // namespace wcs::quad
