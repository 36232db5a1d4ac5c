#pragma once

#include <cmath>
#include <complex>

namespace wcs {

/// Neumaier's variant of Kahan compensated summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// Running sum of exp(l_k) for real l_k, kept as log of the total.
class LogSumExp {
public:
    void add(double log_term) {
        if (log_term == -INFINITY) return;
        if (empty_) {
            max_ = log_term;
            scaled_ = 1.0;
            empty_ = false;
        } else if (log_term > max_) {
            scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        } else {
            scaled_ += std::exp(log_term - max_);
        }
    }
    bool empty() const { return empty_; }
    double log_value() const { return empty_ ? -INFINITY : max_ + std::log(scaled_); }

private:
    bool empty_ = true;
    double max_ = 0.0;
    double scaled_ = 0.0;
};

}  // namespace wcs
