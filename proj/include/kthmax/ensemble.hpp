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


#ifndef KTHMAX_ENSEMBLE_HPP
#define KTHMAX_ENSEMBLE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kthmax/specfun.hpp"

namespace kthmax {

/// Links sharing one line-of-sight amplitude.
struct LinkGroup {
    double nu = 1.0;
    int count = 1;
};

/// Fading configuration of M independent Rician links. Link power gains are
/// non-central chi-square with two degrees of freedom, LOS amplitude nu and
/// per-component scale sigma.
///
/// Links are laid out group by group in the order the groups were given;
/// per_link_sigma (when present) follows the same order.
class LinkEnsemble {
public:
    LinkEnsemble(std::vector<LinkGroup> groups, double sigma,
                 std::optional<std::vector<double>> per_link_sigma = std::nullopt);

    /// M identical links.
    static LinkEnsemble iid(double nu, int m, double sigma);

    const std::vector<LinkGroup>& groups() const { return groups_; }
    double sigma() const { return sigma_; }
    const std::optional<std::vector<double>>& per_link_sigma() const { return per_link_sigma_; }
    bool has_per_link_sigma() const { return per_link_sigma_.has_value(); }

    int size() const { return m_; }
    int group_count() const { return static_cast<int>(groups_.size()); }

    /// Expanded per-link LOS amplitudes and scales, length M.
    std::vector<double> link_nu() const;
    std::vector<double> link_sigma() const;

    /// Canonical text form used in digests and output headers.
    std::string describe() const;

private:
    std::vector<LinkGroup> groups_;
    double sigma_;
    std::optional<std::vector<double>> per_link_sigma_;
    int m_ = 0;
};

/// Rank of the selected link: k = 1 is the strongest.
class OrderSelector {
public:
    explicit OrderSelector(int k);
    int k() const { return k_; }
    /// Throws DomainError unless k <= m.
    void check_against(int m) const;

private:
    int k_;
};

// Single-link law: Z = (nu + sigma N1)^2 + (sigma N2)^2.

/// P(Z <= z) = 1 - Q1(nu/sigma, sqrt(z)/sigma).
double link_cdf(double nu, double sigma, double z);
/// P(Z > z) = Q1(nu/sigma, sqrt(z)/sigma).
double link_sf(double nu, double sigma, double z);
/// Density (1/(2 sigma^2)) exp(-(z + nu^2)/(2 sigma^2)) I0(nu sqrt(z) / sigma^2), z > 0.
/// Both tails at once: {P(Z > z), P(Z <= z)}.
specfun::MarcumPair link_tails(double nu, double sigma, double z);
double link_pdf(double nu, double sigma, double z);
double link_log_pdf(double nu, double sigma, double z);

}  // namespace kthmax

#endif  // KTHMAX_ENSEMBLE_HPP
