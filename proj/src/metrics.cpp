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


#include "kthmax/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kthmax {
namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace

void MetricParams::validate() const
{
    if (!finite_positive(gamma_s))
        throw DomainError("MetricParams: gamma_s must be positive");
    if (!finite_positive(z_th))
        throw DomainError("MetricParams: z_th must be positive");
    if (!finite_positive(theta))
        throw DomainError("MetricParams: theta must be positive");
    if (!(finite_positive(bep_c) && bep_c <= 1.0))
        throw DomainError("MetricParams: bep_c must lie in (0, 1]");
    if (!(std::isfinite(bep_rho) && bep_rho >= 0.0))
        throw DomainError("MetricParams: bep_rho must be non-negative");
}

const char* to_string(MetricMethod m)
{
    switch (m) {
    case MetricMethod::closed_form: return "closed_form";
    case MetricMethod::series: return "series";
    case MetricMethod::quadrature: return "quadrature";
    }
    return "unknown";
}

double outage_probability(const NormConstants& c, OrderSelector k, const MetricParams& params)
{
    params.validate();
    return unnormalized_kth_max_cdf_asym(c, k, params.z_th / params.gamma_s);
}

double outage_probability(const Law& law, const MetricParams& params)
{
    params.validate();
    if (const auto* a = std::get_if<AsymptoticLaw>(&law))
        return outage_probability(a->consts, a->k, params);
    return law_cdf(law, params.z_th / params.gamma_s);
}

bool series_admissible(const NormConstants& c, const MetricParams& params)
{
    return (1.0 + params.gamma_s * c.b_m) / (params.gamma_s * c.a_m) <= 50.0;
}

SeriesReport avg_throughput_series(const NormConstants& c, OrderSelector k, const MetricParams& params,
                                   int cap)
{
    params.validate();
    if (cap < 1)
        throw DomainError("avg_throughput_series: cap must be positive");
    const int kk = k.k();
    const double log_p = std::log(c.p);
    const double log_prefactor = kk * log_p - specfun::log_gamma(kk) - std::log(std::numbers::ln2);

    SeriesReport report;
    CompensatedSum sum;
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 0; n < cap; ++n) {
        const double b_n = (kk + n) / (c.a_m * params.gamma_s);
        // e^{A_n} E1(B_n) = e^{A_n - B_n} [e^{B_n} E1(B_n)],  A_n - B_n = B_n gamma_s b
        const double log_mag = log_prefactor + n * log_p - specfun::log_gamma(n + 1.0) -
                               std::log(static_cast<double>(kk + n)) + b_n * params.gamma_s * c.b_m +
                               std::log(specfun::exp_integral_e1_scaled(b_n));
        if (log_mag > 700.0) {
            report.converged = false;
            break;
        }
        const double magnitude = std::exp(log_mag);
        sum.add(n % 2 == 0 ? magnitude : -magnitude);
        report.terms_used = n + 1;
        report.max_term_magnitude = std::max(report.max_term_magnitude, magnitude);
        if (n > 0 && magnitude < previous && magnitude <= 1e-10 * std::abs(sum.value())) {
            report.converged = true;
            break;
        }
        previous = magnitude;
    }
    report.value = sum.value();
    if (report.converged && report.max_term_magnitude > 1e6 * std::abs(report.value))
        report.converged = false;
    return report;
}

double expect_over_law(const Law& law, const std::function<double(double)>& h, const QuadratureOptions& opts,
                       double lower_prob)
{
    if (!(lower_prob > 0.0 && lower_prob < 1e-3))
        throw DomainError("expect_over_law: lower_prob must lie in (0, 1e-3)");
    const double q_lo = law_quantile(law, lower_prob);
    const double q_hi = law_quantile(law, 1.0 - 1e-14);
    const double lo = std::max(0.0, q_lo);
    const double width = q_hi > lo ? q_hi - lo : q_hi - q_lo;
    const auto integrand = [&](double z) { return h(z) * law_pdf(law, z); };

    // The upper tail is integrated piecewise until a piece stops mattering; this
    // also covers laws whose mass above zero is a sliver of the whole.
    double total = law_cdf(law, lo) * h(lo);
    double a = lo;
    double b = lo + width;
    total += integrate(integrand, a, b, opts).value;
    for (int piece = 0; piece < 64; ++piece) {
        a = b;
        b += width;
        const double extra = integrate(integrand, a, b, opts).value;
        total += extra;
        if (std::abs(extra) <= 1e-13 * std::abs(total))
            break;
    }
    return total;
}

double avg_throughput_quadrature(const Law& law, const MetricParams& params)
{
    params.validate();
    const double g = params.gamma_s;
    return expect_over_law(law, [g](double z) { return std::log2(1.0 + g * z); });
}

MetricValue avg_throughput(const Law& law, const MetricParams& params)
{
    if (const auto* a = std::get_if<AsymptoticLaw>(&law)) {
        if (series_admissible(a->consts, params)) {
            const auto series = avg_throughput_series(a->consts, a->k, params);
            if (series.converged)
                return {series.value, MetricMethod::series};
        }
    }
    return {avg_throughput_quadrature(law, params), MetricMethod::quadrature};
}

double effective_throughput(const Law& law, const MetricParams& params, EffectiveMode mode)
{
    params.validate();
    const double g = params.gamma_s;
    const double theta = params.theta;
    double inner = 0.0;
    if (mode == EffectiveMode::exact) {
        inner = expect_over_law(law, [g, theta](double z) { return std::pow(1.0 + g * z, -theta); });
    } else {
        if (!(law_quantile(law, 1e-9) > 0.0))
            throw DomainError("effective_throughput: high-SNR approximation needs q(1e-9) > 0");
        inner = expect_over_law(law, [g, theta](double z) { return std::pow(g * z, -theta); }, {}, 1e-9);
    }
    return -std::log2(inner) / theta;
}

BepReport avg_bep(const NormConstants& c, OrderSelector k, const MetricParams& params)
{
    params.validate();
    const double s = params.bep_rho * params.gamma_s;
    const double log_v = std::log(params.bep_c) - c.b_m * s + specfun::log_gamma(k.k() + c.a_m * s) -
                         specfun::log_gamma(k.k());
    const double raw = std::exp(log_v);
    if (raw > params.bep_c)
        return {params.bep_c, raw, true};
    return {raw, raw, false};
}

MetricValue avg_bep(const Law& law, const MetricParams& params)
{
    if (const auto* a = std::get_if<AsymptoticLaw>(&law))
        return {avg_bep(a->consts, a->k, params).value, MetricMethod::closed_form};
    params.validate();
    const double s = params.bep_rho * params.gamma_s;
    const double c = params.bep_c;
    return {expect_over_law(law, [c, s](double z) { return c * std::exp(-s * z); }), MetricMethod::quadrature};
}

}  // namespace kthmax
