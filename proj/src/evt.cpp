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


#include "kthmax/evt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kthmax {

DominantGroup select_nu_tilde(const LinkEnsemble& ensemble, std::optional<double> override_nu)
{
    const auto& groups = ensemble.groups();
    if (override_nu) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const LinkGroup& g) { return g.nu == *override_nu; });
        if (it == groups.end())
            throw DomainError("select_nu_tilde: override does not match any group's nu");
        return {it->nu, it->count};
    }
    auto it = std::max_element(groups.begin(), groups.end(),
                               [](const LinkGroup& a, const LinkGroup& b) { return a.nu < b.nu; });
    return {it->nu, it->count};
}

NormConstants norm_constants(const LinkEnsemble& ensemble, std::optional<double> override_nu)
{
    if (ensemble.has_per_link_sigma())
        throw DomainError("norm_constants: per-link sigma is only supported by the finite-M law");
    const auto [nu_t, m_t] = select_nu_tilde(ensemble, override_nu);
    if (m_t < 3)
        throw DomainError("norm_constants: the dominant group needs at least 3 links");

    const double sigma = ensemble.sigma();
    const double a = 2.0 * sigma * sigma;
    const double log_m = std::log(static_cast<double>(m_t));
    const double root_log_m = std::sqrt(log_m);
    // log(2 sqrt2 pi nu/sigma * exp(-nu^2/sigma^2)), kept in log form
    const double log_c2 = std::log(2.0 * std::numbers::sqrt2 * std::numbers::pi * nu_t / sigma) -
                          nu_t * nu_t / (sigma * sigma);
    const double b = a * (log_m - 0.25 * std::log(log_m) +
                          nu_t * std::numbers::sqrt2 / sigma * root_log_m - 0.5 * log_c2);

    // Group weight exponent: (-nu_i^2 - nu~^2)/(2 s^2) + (sqrt2/s)((nu_i - nu~) sqrt(log M~)
    // + nu_i nu~ / (sqrt2 s)), rewritten so the dominant group's term is exactly 1.
    double p = 0.0;
    for (const auto& g : ensemble.groups()) {
        const double d = g.nu - nu_t;
        const double expo = -d * d / (2.0 * sigma * sigma) + std::numbers::sqrt2 / sigma * d * root_log_m;
        const double w = static_cast<double>(g.count) / m_t;
        p += (g.nu == nu_t ? w : w * std::sqrt(nu_t / g.nu)) * std::exp(expo);
    }
    return {a, b, p, nu_t, m_t};
}

double normalized_kth_max_cdf(const NormConstants& c, OrderSelector k, double z)
{
    const double log_x = std::log(c.p) - z;
    if (log_x > 700.0)
        return 0.0;
    return specfun::reg_upper_gamma(k.k(), std::exp(log_x));
}

double normalized_kth_max_pdf(const NormConstants& c, OrderSelector k, double z)
{
    const double log_x = std::log(c.p) - z;
    if (log_x > 700.0)
        return 0.0;
    return std::exp(k.k() * log_x - std::exp(log_x) - specfun::log_gamma(k.k()));
}

double unnormalized_kth_max_cdf_asym(const NormConstants& c, OrderSelector k, double z)
{
    return normalized_kth_max_cdf(c, k, (z - c.b_m) / c.a_m);
}

double unnormalized_kth_max_pdf_asym(const NormConstants& c, OrderSelector k, double z)
{
    return normalized_kth_max_pdf(c, k, (z - c.b_m) / c.a_m) / c.a_m;
}

Eigen::ArrayXd normalized_kth_max_cdf(const NormConstants& c, OrderSelector k, const Eigen::ArrayXd& z)
{
    return z.unaryExpr([&](double v) { return normalized_kth_max_cdf(c, k, v); });
}

Eigen::ArrayXd unnormalized_kth_max_cdf_asym(const NormConstants& c, OrderSelector k,
                                             const Eigen::ArrayXd& z)
{
    return z.unaryExpr([&](double v) { return unnormalized_kth_max_cdf_asym(c, k, v); });
}

double normalized_mgf(OrderSelector k, double t)
{
    if (!(t < k.k()))
        throw DomainError("normalized_mgf: t must be smaller than k");
    return std::exp(specfun::log_gamma(k.k() - t) - specfun::log_gamma(k.k()));
}

double finite_m_u(const LinkEnsemble& ensemble, double z)
{
    if (!(z > 0.0))
        throw DomainError("finite_m_u: z must be positive");
    double u = 0.0;
    if (!ensemble.has_per_link_sigma()) {
        for (const auto& g : ensemble.groups())
            u += g.count * link_sf(g.nu, ensemble.sigma(), z);
        return u;
    }
    const auto nu = ensemble.link_nu();
    const auto& sigma = *ensemble.per_link_sigma();
    for (std::size_t m = 0; m < nu.size(); ++m)
        u += link_sf(nu[m], sigma[m], z);
    return u;
}

double finite_m_u_prime(const LinkEnsemble& ensemble, double z)
{
    if (!(z > 0.0))
        throw DomainError("finite_m_u_prime: z must be positive");
    double s = 0.0;
    if (!ensemble.has_per_link_sigma()) {
        for (const auto& g : ensemble.groups())
            s += g.count * link_pdf(g.nu, ensemble.sigma(), z);
        return -s;
    }
    const auto nu = ensemble.link_nu();
    const auto& sigma = *ensemble.per_link_sigma();
    for (std::size_t m = 0; m < nu.size(); ++m)
        s += link_pdf(nu[m], sigma[m], z);
    return -s;
}

double finite_m_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k, double z)
{
    k.check_against(ensemble.size());
    return specfun::reg_upper_gamma(k.k(), finite_m_u(ensemble, z));
}

double finite_m_kth_max_pdf(const LinkEnsemble& ensemble, OrderSelector k, double z)
{
    k.check_against(ensemble.size());
    const double u = finite_m_u(ensemble, z);
    const double slope = -finite_m_u_prime(ensemble, z);
    if (slope <= 0.0)
        return 0.0;
    if (k.k() == 1)
        return slope * std::exp(-u);
    if (u <= 0.0)
        return 0.0;
    return std::exp(std::log(slope) + (k.k() - 1) * std::log(u) - u - specfun::log_gamma(k.k()));
}

Eigen::ArrayXd finite_m_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k,
                                    const Eigen::ArrayXd& z)
{
    return z.unaryExpr([&](double v) { return finite_m_kth_max_cdf(ensemble, k, v); });
}

const char* to_string(OrderVerdict v)
{
    switch (v) {
    case OrderVerdict::second_dominates: return "second_dominates";
    case OrderVerdict::first_dominates: return "first_dominates";
    case OrderVerdict::crossing: return "crossing";
    }
    return "unknown";
}

OrderReport stochastic_order_check(const NormConstants& first, const NormConstants& second,
                                   const Eigen::ArrayXd& z_grid, OrderSelector k)
{
    if (z_grid.size() == 0)
        throw DomainError("stochastic_order_check: empty grid");
    if (!(first.a_m > 0.0 && second.a_m > 0.0 && first.p > 0.0 && second.p > 0.0))
        throw DomainError("stochastic_order_check: a_m and p must be positive");
    if (std::abs(first.p - second.p) > 1e-12 * std::max(first.p, second.p))
        throw DomainError("stochastic_order_check: ordering is only defined for equal p");

    OrderReport report;
    report.condition = (z_grid - first.b_m) / first.a_m - (z_grid - second.b_m) / second.a_m;
    const bool all_nonneg = (report.condition >= 0.0).all();
    const bool all_nonpos = (report.condition <= 0.0).all();
    report.verdict = all_nonneg   ? OrderVerdict::second_dominates
                     : all_nonpos ? OrderVerdict::first_dominates
                                  : OrderVerdict::crossing;

    auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    for (Eigen::Index i = 1; i < report.condition.size(); ++i) {
        if (sign(report.condition[i]) != sign(report.condition[i - 1])) {
            report.sign_change_index = i;
            break;
        }
    }

    if (report.verdict != OrderVerdict::crossing) {
        const Eigen::ArrayXd f1 = unnormalized_kth_max_cdf_asym(first, k, z_grid);
        const Eigen::ArrayXd f2 = unnormalized_kth_max_cdf_asym(second, k, z_grid);
        const Eigen::ArrayXd gap = report.verdict == OrderVerdict::second_dominates ? f2 - f1 : f1 - f2;
        if ((gap > 1e-12).any())
            throw std::logic_error("stochastic_order_check: dominance verdict contradicts the CDFs");
    }
    return report;
}

}  // namespace kthmax
