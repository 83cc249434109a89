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


#include "kthmax/ensemble.hpp"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace kthmax {

LinkEnsemble::LinkEnsemble(std::vector<LinkGroup> groups, double sigma,
                           std::optional<std::vector<double>> per_link_sigma)
    : groups_(std::move(groups)), sigma_(sigma), per_link_sigma_(std::move(per_link_sigma))
{
    if (groups_.empty())
        throw DomainError("LinkEnsemble: at least one group is required");
    if (!(std::isfinite(sigma_) && sigma_ > 0.0))
        throw DomainError("LinkEnsemble: sigma must be positive and finite");
    std::set<double> seen;
    for (const auto& g : groups_) {
        if (!(std::isfinite(g.nu) && g.nu > 0.0))
            throw DomainError("LinkEnsemble: every nu must be positive and finite");
        if (g.count < 1)
            throw DomainError("LinkEnsemble: every group count must be at least 1");
        if (!seen.insert(g.nu).second)
            throw DomainError("LinkEnsemble: nu values must be distinct across groups");
        m_ += g.count;
    }
    if (per_link_sigma_) {
        if (static_cast<int>(per_link_sigma_->size()) != m_)
            throw DomainError("LinkEnsemble: per_link_sigma length must equal M");
        for (double s : *per_link_sigma_)
            if (!(std::isfinite(s) && s > 0.0))
                throw DomainError("LinkEnsemble: per_link_sigma entries must be positive");
    }
}

LinkEnsemble LinkEnsemble::iid(double nu, int m, double sigma)
{
    return LinkEnsemble({{nu, m}}, sigma);
}

std::vector<double> LinkEnsemble::link_nu() const
{
    std::vector<double> out;
    out.reserve(m_);
    for (const auto& g : groups_)
        out.insert(out.end(), g.count, g.nu);
    return out;
}

std::vector<double> LinkEnsemble::link_sigma() const
{
    if (per_link_sigma_)
        return *per_link_sigma_;
    return std::vector<double>(m_, sigma_);
}

std::string LinkEnsemble::describe() const
{
    std::ostringstream os;
    os << std::setprecision(17) << "groups=";
    for (std::size_t i = 0; i < groups_.size(); ++i)
        os << (i ? "," : "") << groups_[i].nu << ":" << groups_[i].count;
    os << ";sigma=" << sigma_;
    if (per_link_sigma_) {
        os << ";per_link_sigma=";
        for (std::size_t i = 0; i < per_link_sigma_->size(); ++i)
            os << (i ? "," : "") << (*per_link_sigma_)[i];
    }
    return os.str();
}

OrderSelector::OrderSelector(int k) : k_(k)
{
    if (k < 1)
        throw DomainError("OrderSelector: k must be at least 1");
}

void OrderSelector::check_against(int m) const
{
    if (k_ > m)
        throw DomainError("OrderSelector: k exceeds the number of links");
}

double link_cdf(double nu, double sigma, double z)
{
    if (z <= 0.0)
        return 0.0;
    return specfun::marcum_p1(nu / sigma, std::sqrt(z) / sigma);
}

double link_sf(double nu, double sigma, double z)
{
    if (z <= 0.0)
        return 1.0;
    return specfun::marcum_q1(nu / sigma, std::sqrt(z) / sigma);
}

specfun::MarcumPair link_tails(double nu, double sigma, double z)
{
    if (z <= 0.0)
        return {1.0, 0.0};
    return specfun::marcum_q1_pair(nu / sigma, std::sqrt(z) / sigma);
}

double link_log_pdf(double nu, double sigma, double z)
{
    if (z <= 0.0)
        throw DomainError("link_pdf: z must be positive");
    const double s2 = sigma * sigma;
    const double r = std::sqrt(z);
    // exp(-(z+nu^2)/(2 s2)) I0(x) = exp(-(r-nu)^2/(2 s2)) * [exp(-x) I0(x)],  x = nu r / s2
    const double x = nu * r / s2;
    return -std::log(2.0 * s2) - (r - nu) * (r - nu) / (2.0 * s2) +
           std::log(specfun::bessel_i0_scaled(x));
}

double link_pdf(double nu, double sigma, double z)
{
    return std::exp(link_log_pdf(nu, sigma, z));
}

}  // namespace kthmax
