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


#ifndef KTHMAX_ORACLE_HPP
#define KTHMAX_ORACLE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kthmax/ensemble.hpp"
#include "kthmax/metrics.hpp"

namespace kthmax {

/// Sorted Monte Carlo sample of a scalar statistic with its provenance.
class EmpiricalCdf {
public:
    /// Sorts the samples. Throws DomainError when empty or containing NaN.
    EmpiricalCdf(Eigen::ArrayXd samples, std::uint64_t seed, std::string config_digest);

    const Eigen::ArrayXd& samples() const { return samples_; }
    std::uint64_t seed() const { return seed_; }
    Eigen::Index n() const { return samples_.size(); }
    const std::string& config_digest() const { return digest_; }

    /// Fraction of samples <= z.
    double cdf(double z) const;
    /// Fraction of samples < z.
    double cdf_left(double z) const;

    /// Samples mapped through (z - b) / a, keeping the same provenance.
    EmpiricalCdf affine(double a, double b) const;

    bool operator==(const EmpiricalCdf& other) const;

private:
    Eigen::ArrayXd samples_;
    std::uint64_t seed_;
    std::string digest_;
};

/// Trials per independently seeded RNG stream. Part of the reproducibility
/// contract: the chunk layout, not the thread count, fixes every draw.
inline constexpr Eigen::Index kSamplerChunk = 4096;

/// Draws n trials of M links, Z_m = (nu_m + sigma_m N1)^2 + (sigma_m N2)^2,
/// and records the k-th largest of each trial.
EmpiricalCdf sample_kth_max(const LinkEnsemble& ensemble, OrderSelector k, Eigen::Index n,
                            std::uint64_t seed, int threads = 0);

/// Several ranks from the same draws; element i belongs to ranks[i].
std::vector<EmpiricalCdf> sample_order_statistics(const LinkEnsemble& ensemble,
                                                  const std::vector<int>& ranks, Eigen::Index n,
                                                  std::uint64_t seed, int threads = 0);

/// Exact CDF of the k-th maximum at z > 0: P(at most k-1 links exceed z), from an
/// O(M k) recursion over the exceedance count.
double exact_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k, double z);
double exact_kth_max_cdf_from_link_cdfs(std::span<const double> link_cdf, int k);

/// Direct subset enumeration of the order-statistic sum; M <= 15.
double brute_force_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k, double z);
double brute_force_kth_max_cdf_from_link_cdfs(std::span<const double> link_cdf, int k);

/// sup_z |F_n(z) - F(z)| using both one-sided limits of the empirical CDF.
double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& theoretical_cdf);

enum class MonteCarloMetric { outage, avg_rate, eff_rate, bep };

struct MonteCarloEstimate {
    double estimate;
    double std_error;
};

/// Plug-in estimate over gamma = gamma_s Z; needs n >= 100.
MonteCarloEstimate mc_metric(const EmpiricalCdf& empirical, const MetricParams& params,
                             MonteCarloMetric which);

}  // namespace kthmax

#endif  // KTHMAX_ORACLE_HPP
