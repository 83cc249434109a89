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


#include "kthmax/law.hpp"

#include <cmath>
#include <stdexcept>

namespace kthmax {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// x with reg_upper_gamma(k, x) = prob; the function decreases in x.
double inverse_reg_upper_gamma(int k, double prob)
{
    double lo = -745.0;
    double hi = std::log(10.0 * k + 200.0);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (specfun::reg_upper_gamma(k, std::exp(mid)) > prob)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace

std::string law_name(const Law& law)
{
    return std::holds_alternative<AsymptoticLaw>(law) ? "asymptotic" : "finite_m";
}

double law_cdf(const Law& law, double z)
{
    return std::visit(overloaded{
                          [z](const AsymptoticLaw& a) { return unnormalized_kth_max_cdf_asym(a.consts, a.k, z); },
                          [z](const FiniteMLaw& f) {
                              if (z < 0.0)
                                  return 0.0;
                              if (z == 0.0)
                                  return specfun::reg_upper_gamma(f.k.k(), f.ensemble.size());
                              return finite_m_kth_max_cdf(f.ensemble, f.k, z);
                          },
                      },
                      law);
}

double law_pdf(const Law& law, double z)
{
    return std::visit(overloaded{
                          [z](const AsymptoticLaw& a) { return unnormalized_kth_max_pdf_asym(a.consts, a.k, z); },
                          [z](const FiniteMLaw& f) {
                              return z > 0.0 ? finite_m_kth_max_pdf(f.ensemble, f.k, z) : 0.0;
                          },
                      },
                      law);
}

double law_quantile(const Law& law, double prob)
{
    if (!(prob > 0.0 && prob < 1.0))
        throw DomainError("law_quantile: prob must lie in (0, 1)");
    if (const auto* a = std::get_if<AsymptoticLaw>(&law)) {
        // F(z) = Q(k, p exp(-(z-b)/a))  =>  z = b - a log(x / p)
        const double x = inverse_reg_upper_gamma(a->k.k(), prob);
        return a->consts.b_m - a->consts.a_m * std::log(x / a->consts.p);
    }
    if (law_cdf(law, 0.0) >= prob)
        return 0.0;
    const auto& f = std::get<FiniteMLaw>(law);
    double hi = 1.0;
    for (double s : f.ensemble.link_sigma())
        hi = std::max(hi, s * s);
    for (int i = 0; law_cdf(law, hi) < prob; ++i) {
        if (i == 2000)
            throw std::runtime_error("law_quantile: upper bracket not found");
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (law_cdf(law, mid) >= prob)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

Law routed_law(const LinkEnsemble& ensemble, OrderSelector k, int finite_m_below)
{
    k.check_against(ensemble.size());
    if (ensemble.size() >= finite_m_below && !ensemble.has_per_link_sigma() &&
        select_nu_tilde(ensemble).m_tilde >= 3)
        return AsymptoticLaw{norm_constants(ensemble), k};
    return FiniteMLaw{ensemble, k};
}

Eigen::ArrayXd default_grid(const Law& law, int count)
{
    if (count < 2)
        throw DomainError("default_grid: need at least two points");
    return Eigen::ArrayXd::LinSpaced(count, law_quantile(law, 1e-3), law_quantile(law, 1.0 - 1e-3));
}

}  // namespace kthmax
