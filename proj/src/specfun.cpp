// SPDX-License-Identifier: Apache-2.0
//
// kthmax: asymptotic k-th maximum order statistics of Rician links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "kthmax/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kthmax {

void Accuracy::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol < 1e-3))
        throw DomainError("Accuracy: rel_tol must lie in (0, 1e-3)");
    if (max_terms < 16)
        throw DomainError("Accuracy: max_terms must be at least 16");
}

namespace specfun {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what)
{
    if (!ok)
        throw DomainError(what);
}

/// Running sum of exp(l_i) kept as exp(shift) * scaled.
class LogSum {
public:
    void add(double log_term)
    {
        if (log_term == -kInf)
            return;
        if (log_term > shift_) {
            scaled_ = scaled_ * std::exp(shift_ - log_term) + 1.0;
            shift_ = log_term;
        } else {
            scaled_ += std::exp(log_term - shift_);
        }
    }
    double log_value() const { return scaled_ > 0.0 ? shift_ + std::log(scaled_) : -kInf; }

private:
    double shift_ = -kInf;
    double scaled_ = 0.0;
};

double log_add(double a, double b)
{
    if (a == -kInf)
        return b;
    if (b == -kInf)
        return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_poisson_weight(double lambda, double log_lambda, int n, double log_fact_n)
{
    if (lambda == 0.0)
        return n == 0 ? 0.0 : -kInf;
    return -lambda + n * log_lambda - log_fact_n;
}

// Tail bound for sum_{j>n} w_j given w_n, valid once n + 2 > lambda.
double log_poisson_tail_factor(double lambda, int n)
{
    const double r = lambda / (n + 2.0);
    if (r == 0.0)
        return -kInf;
    return std::log(r / (1.0 - r));
}

// log Q1 with x = beta^2/2, lambda = alpha^2/2:
//   Q1 = sum_n Pois(n; lambda) * Q(n+1, x),  Q(n+1, x) = e^-x sum_{m<=n} x^m/m!
double log_marcum_upper(double lambda, double x, const Accuracy& acc)
{
    const double log_lambda = lambda > 0.0 ? std::log(lambda) : -kInf;
    const double log_x = std::log(x);
    const double log_tol = std::log(acc.rel_tol) - 2.3;  // one digit of headroom
    LogSum sum;
    double log_fact = 0.0;
    double log_q = -kInf;
    for (int n = 0; n < acc.max_terms; ++n) {
        if (n > 0)
            log_fact += std::log(static_cast<double>(n));
        log_q = log_add(log_q, -x + n * log_x - log_fact);
        const double log_w = log_poisson_weight(lambda, log_lambda, n, log_fact);
        sum.add(log_w + log_q);
        if (n + 2 > lambda) {
            if (log_w + log_poisson_tail_factor(lambda, n) < log_tol + sum.log_value())
                return sum.log_value();
        }
    }
    throw std::runtime_error("marcum_q1: series did not converge within max_terms");
}

// log(1 - Q1) = log sum_n Pois(n; lambda) * P(n+1, x), P(n+1, x) = e^-x sum_{m>n} x^m/m!.
// P is evaluated once at the truncation point and recurred downward, which
// only ever adds positive terms.
double log_marcum_lower(double lambda, double x, const Accuracy& acc)
{
    const double log_lambda = lambda > 0.0 ? std::log(lambda) : -kInf;
    const double log_x = std::log(x);
    const double log_tol = std::log(acc.rel_tol) - 2.3;
    // Any single term bounds the sum from below; the n = 0 term is cheapest.
    const double log_floor = -lambda + std::log(-std::expm1(-x));

    int top = 0;
    double log_fact_top = 0.0;
    for (;; ++top) {
        if (top >= acc.max_terms)
            throw std::runtime_error("marcum_p1: series did not converge within max_terms");
        if (top > 0)
            log_fact_top += std::log(static_cast<double>(top));
        if (top + 2 > lambda && top + 2 > x) {
            const double log_w = log_poisson_weight(lambda, log_lambda, top, log_fact_top);
            if (log_w + log_poisson_tail_factor(lambda, top) < log_tol + log_floor)
                break;
        }
    }

    // P(top+1, x) = t_{top+1} * (1 + x/(top+2) + x^2/((top+2)(top+3)) + ...)
    const double log_fact_next = log_fact_top + std::log(top + 1.0);
    double series = 1.0;
    double term = 1.0;
    for (int j = 1; j < acc.max_terms; ++j) {
        term *= x / (top + 1.0 + j);
        series += term;
        if (term < 1e-17 * series)
            break;
    }
    double log_p = -x + (top + 1) * log_x - log_fact_next + std::log(series);

    LogSum sum;
    double log_fact = log_fact_top;
    for (int n = top; n >= 0; --n) {
        sum.add(log_poisson_weight(lambda, log_lambda, n, log_fact) + log_p);
        // P(n, x) = P(n+1, x) + t_n
        log_p = log_add(log_p, -x + n * log_x - log_fact);
        if (n > 0)
            log_fact -= std::log(static_cast<double>(n));
    }
    return sum.log_value();
}

}  // namespace

MarcumPair marcum_q1_pair(double alpha, double beta, const Accuracy& acc)
{
    require(std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0.0 && beta >= 0.0,
            "marcum_q1: arguments must be finite and non-negative");
    acc.validate();
    if (beta == 0.0)
        return {1.0, 0.0};
    const double x = 0.5 * beta * beta;
    if (alpha == 0.0)
        return {std::exp(-x), -std::expm1(-x)};
    const double lambda = 0.5 * alpha * alpha;
    if (x > lambda + 1.0) {
        const double q = std::exp(log_marcum_upper(lambda, x, acc));
        return {std::clamp(q, 0.0, 1.0), std::clamp(1.0 - q, 0.0, 1.0)};
    }
    const double p = std::exp(log_marcum_lower(lambda, x, acc));
    return {std::clamp(1.0 - p, 0.0, 1.0), std::clamp(p, 0.0, 1.0)};
}

namespace {

double bessel_i0_series_minus_one(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 0.0;
    for (int m = 1; m < 500; ++m) {
        term *= q / (static_cast<double>(m) * m);
        sum += term;
        if (term < 1e-17 * (1.0 + sum))
            break;
    }
    return sum;
}

// exp(-x) I0(x) sqrt(2 pi x) from the large-argument expansion.
double bessel_i0_asymptotic_factor(double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term)
            break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum;
}

constexpr double kBesselSwitch = 20.0;

}  // namespace

double marcum_q1(double alpha, double beta, const Accuracy& acc)
{
    return marcum_q1_pair(alpha, beta, acc).q;
}

double marcum_p1(double alpha, double beta, const Accuracy& acc)
{
    return marcum_q1_pair(alpha, beta, acc).p;
}

double log_marcum_q1(double alpha, double beta, const Accuracy& acc)
{
    require(std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0.0 && beta >= 0.0,
            "marcum_q1: arguments must be finite and non-negative");
    acc.validate();
    const double x = 0.5 * beta * beta;
    const double lambda = 0.5 * alpha * alpha;
    if (beta == 0.0)
        return 0.0;
    if (alpha == 0.0)
        return -x;
    if (x > lambda + 1.0)
        return log_marcum_upper(lambda, x, acc);
    return std::log1p(-std::exp(log_marcum_lower(lambda, x, acc)));
}

double log_marcum_q1_asymptotic(double alpha, double beta)
{
    require(alpha > 0.0 && beta > 0.0, "marcum_q1_asymptotic: arguments must be positive");
    const double d = beta - alpha;
    return -0.5 * d * d - 0.5 * std::log(2.0 * std::numbers::pi * alpha * beta);
}

double marcum_q1_asymptotic(double alpha, double beta)
{
    return std::exp(log_marcum_q1_asymptotic(alpha, beta));
}

double bessel_i0(double x)
{
    require(std::isfinite(x) && x >= 0.0, "bessel_i0: argument must be finite and non-negative");
    if (x <= kBesselSwitch)
        return 1.0 + bessel_i0_series_minus_one(x);
    return std::exp(x) * bessel_i0_scaled(x);
}

double bessel_i0_scaled(double x)
{
    require(std::isfinite(x) && x >= 0.0, "bessel_i0: argument must be finite and non-negative");
    if (x <= kBesselSwitch)
        return std::exp(-x) * (1.0 + bessel_i0_series_minus_one(x));
    return bessel_i0_asymptotic_factor(x) / std::sqrt(2.0 * std::numbers::pi * x);
}

double log_bessel_i0(double x)
{
    require(std::isfinite(x) && x >= 0.0, "bessel_i0: argument must be finite and non-negative");
    if (x <= kBesselSwitch)
        return std::log1p(bessel_i0_series_minus_one(x));
    return x + std::log(bessel_i0_scaled(x));
}

double log_gamma(double x)
{
    require(std::isfinite(x) && x > 0.0, "log_gamma: argument must be positive and finite");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant: std::lgamma writes signgam
#else
    return std::lgamma(x);
#endif
}

double log_reg_upper_gamma(int k, double x)
{
    require(k >= 1, "reg_upper_gamma: k must be a positive integer");
    require(x >= 0.0 && !std::isnan(x), "reg_upper_gamma: x must be non-negative");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return -kInf;
    if (k == 1)
        return -x;

    // Terms x^m/m! are unimodal in m with the peak at min(k-1, floor(x)).
    const double log_x = std::log(x);
    const int peak = static_cast<int>(std::min<double>(k - 1, std::floor(x)));
    const double log_peak = peak * log_x - log_gamma(peak + 1.0);

    // Walk outward from the peak, always taking the larger neighbour next.
    double sum = 1.0;
    int lo = peak - 1;
    int hi = peak + 1;
    double log_lo = lo >= 0 ? log_peak - log_x + std::log(static_cast<double>(peak)) : -kInf;
    double log_hi = hi <= k - 1 ? log_peak + log_x - std::log(static_cast<double>(hi)) : -kInf;
    while (lo >= 0 || hi <= k - 1) {
        if (log_lo >= log_hi) {
            const double t = std::exp(log_lo - log_peak);
            sum += t;
            if (--lo >= 0)
                log_lo += std::log(static_cast<double>(lo + 1)) - log_x;
            else
                log_lo = -kInf;
            if (t < 1e-18 * sum && log_hi - log_peak < std::log(1e-18))
                break;
        } else {
            const double t = std::exp(log_hi - log_peak);
            sum += t;
            if (++hi <= k - 1)
                log_hi += log_x - std::log(static_cast<double>(hi));
            else
                log_hi = -kInf;
            if (t < 1e-18 * sum && log_lo - log_peak < std::log(1e-18))
                break;
        }
    }
    return std::min(0.0, -x + log_peak + std::log(sum));
}

double reg_upper_gamma(int k, double x)
{
    return std::exp(log_reg_upper_gamma(k, x));
}

double exp_integral_e1_scaled(double x, const Accuracy& acc)
{
    require(std::isfinite(x) && x > 0.0, "exp_integral_e1: argument must be positive and finite");
    acc.validate();
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n < acc.max_terms; ++n) {
            term *= -x / n;
            const double contrib = term / n;
            sum += contrib;
            if (std::abs(contrib) < 1e-17 * std::abs(sum))
                break;
        }
        return std::exp(x) * (-euler_gamma - std::log(x) - sum);
    }
    // Modified Lentz on e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < acc.max_terms; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return h;
    }
    throw std::runtime_error("exp_integral_e1: continued fraction did not converge");
}

double exp_integral_e1(double x, const Accuracy& acc)
{
    return std::exp(-x) * exp_integral_e1_scaled(x, acc);
}

double gaussian_q(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double gaussian_q_asymptotic(double x)
{
    require(x > 0.0, "gaussian_q_asymptotic: argument must be positive");
    return std::exp(-0.5 * x * x) / (x * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace specfun
}  // namespace kthmax
