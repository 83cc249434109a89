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


#include "kthmax/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace kthmax {

EmpiricalCdf::EmpiricalCdf(Eigen::ArrayXd samples, std::uint64_t seed, std::string config_digest)
    : samples_(std::move(samples)), seed_(seed), digest_(std::move(config_digest))
{
    if (samples_.size() == 0)
        throw DomainError("EmpiricalCdf: no samples");
    if (samples_.isNaN().any())
        throw DomainError("EmpiricalCdf: NaN sample");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::cdf(double z) const
{
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), z);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(n());
}

double EmpiricalCdf::cdf_left(double z) const
{
    const auto it = std::lower_bound(samples_.begin(), samples_.end(), z);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(n());
}

EmpiricalCdf EmpiricalCdf::affine(double a, double b) const
{
    if (!(a > 0.0))
        throw DomainError("EmpiricalCdf::affine: scale must be positive");
    return EmpiricalCdf((samples_ - b) / a, seed_, digest_);
}

bool EmpiricalCdf::operator==(const EmpiricalCdf& other) const
{
    if (seed_ != other.seed_ || digest_ != other.digest_ || n() != other.n())
        return false;
    for (Eigen::Index i = 0; i < n(); ++i) {
        if (std::bit_cast<std::uint64_t>(samples_[i]) != std::bit_cast<std::uint64_t>(other.samples_[i]))
            return false;
    }
    return true;
}

namespace {

std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

// Uniform on (0, 1] and [0, 1) from the top 53 bits.
double open_unit(std::uint64_t bits) { return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53; }
double half_open_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::string sampler_digest(const LinkEnsemble& ensemble, const std::vector<int>& ranks, Eigen::Index n)
{
    std::ostringstream os;
    os << "rng=mt19937_64/seed_seq(seed,chunk)/chunk=" << kSamplerChunk << "/box-muller;"
       << ensemble.describe() << ";k=";
    for (std::size_t i = 0; i < ranks.size(); ++i)
        os << (i ? "," : "") << ranks[i];
    os << ";n=" << n;
    return os.str();
}

void sample_chunk(const std::vector<double>& nu, const std::vector<double>& sigma, const std::vector<int>& ranks,
                  int deepest, std::uint64_t seed, Eigen::Index chunk, Eigen::Index n,
                  std::vector<Eigen::ArrayXd>& out)
{
    auto eng = chunk_engine(seed, static_cast<std::uint64_t>(chunk));
    const std::size_t m = nu.size();
    std::vector<double> z(m);
    const Eigen::Index begin = chunk * kSamplerChunk;
    const Eigen::Index end = std::min(n, begin + kSamplerChunk);
    for (Eigen::Index t = begin; t < end; ++t) {
        for (std::size_t j = 0; j < m; ++j) {
            const double r = std::sqrt(-2.0 * std::log(open_unit(eng())));
            const double phi = 2.0 * std::numbers::pi * half_open_unit(eng());
            const double x = nu[j] + sigma[j] * r * std::cos(phi);
            const double y = sigma[j] * r * std::sin(phi);
            z[j] = x * x + y * y;
        }
        std::partial_sort(z.begin(), z.begin() + deepest, z.end(), std::greater<>());
        for (std::size_t i = 0; i < ranks.size(); ++i)
            out[i][t] = z[static_cast<std::size_t>(ranks[i] - 1)];
    }
}

}  // namespace

std::vector<EmpiricalCdf> sample_order_statistics(const LinkEnsemble& ensemble, const std::vector<int>& ranks,
                                                  Eigen::Index n, std::uint64_t seed, int threads)
{
    if (n < 1)
        throw DomainError("sample_order_statistics: n must be positive");
    if (ranks.empty())
        throw DomainError("sample_order_statistics: no ranks requested");
    for (int r : ranks)
        OrderSelector(r).check_against(ensemble.size());
    const int deepest = *std::max_element(ranks.begin(), ranks.end());

    const auto nu = ensemble.link_nu();
    const auto sigma = ensemble.link_sigma();
    std::vector<Eigen::ArrayXd> out(ranks.size(), Eigen::ArrayXd(n));
    const Eigen::Index chunks = (n + kSamplerChunk - 1) / kSamplerChunk;

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = static_cast<int>(std::clamp<Eigen::Index>(workers, 1, chunks));
    auto run = [&](int w) {
        for (Eigen::Index c = w; c < chunks; c += workers)
            sample_chunk(nu, sigma, ranks, deepest, seed, c, n, out);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
    }

    const std::string digest = sampler_digest(ensemble, ranks, n);
    std::vector<EmpiricalCdf> result;
    result.reserve(ranks.size());
    for (auto& s : out)
        result.emplace_back(std::move(s), seed, digest);
    return result;
}

EmpiricalCdf sample_kth_max(const LinkEnsemble& ensemble, OrderSelector k, Eigen::Index n, std::uint64_t seed,
                            int threads)
{
    return std::move(sample_order_statistics(ensemble, {k.k()}, n, seed, threads).front());
}

namespace {

// d[j] = P(exactly j of the links seen so far exceed z), j < k.
double at_most_exceed(std::span<const double> cdf, std::span<const double> sf, int k)
{
    std::vector<double> d(static_cast<std::size_t>(k), 0.0);
    d[0] = 1.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        for (std::size_t j = d.size() - 1; j > 0; --j)
            d[j] = d[j] * cdf[i] + d[j - 1] * sf[i];
        d[0] *= cdf[i];
    }
    double total = 0.0;
    for (double v : d)
        total += v;
    return std::clamp(total, 0.0, 1.0);
}

void check_link_cdfs(std::span<const double> link_cdf, int k)
{
    if (link_cdf.empty())
        throw DomainError("kth-max CDF: no links");
    OrderSelector(k).check_against(static_cast<int>(link_cdf.size()));
    for (double f : link_cdf) {
        if (!(f >= 0.0 && f <= 1.0))
            throw DomainError("kth-max CDF: link CDF values must lie in [0, 1]");
    }
}

}  // namespace

double exact_kth_max_cdf_from_link_cdfs(std::span<const double> link_cdf, int k)
{
    check_link_cdfs(link_cdf, k);
    std::vector<double> sf(link_cdf.size());
    std::transform(link_cdf.begin(), link_cdf.end(), sf.begin(), [](double f) { return 1.0 - f; });
    return at_most_exceed(link_cdf, sf, k);
}

double exact_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k, double z)
{
    k.check_against(ensemble.size());
    if (!(z > 0.0))
        throw DomainError("exact_kth_max_cdf: z must be positive");
    const auto nu = ensemble.link_nu();
    const auto sigma = ensemble.link_sigma();
    std::vector<double> cdf(nu.size());
    std::vector<double> sf(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
        if (i > 0 && nu[i] == nu[i - 1] && sigma[i] == sigma[i - 1]) {
            cdf[i] = cdf[i - 1];
            sf[i] = sf[i - 1];
            continue;
        }
        const auto t = link_tails(nu[i], sigma[i], z);
        cdf[i] = t.p;
        sf[i] = t.q;
    }
    return at_most_exceed(cdf, sf, k.k());
}

double brute_force_kth_max_cdf_from_link_cdfs(std::span<const double> link_cdf, int k)
{
    check_link_cdfs(link_cdf, k);
    const int m = static_cast<int>(link_cdf.size());
    if (m > 15)
        throw DomainError("brute_force_kth_max_cdf: at most 15 links");
    // The k-th maximum is <= z iff at least M - k + 1 links are <= z.
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) < m - k + 1)
            continue;
        double prod = 1.0;
        for (int j = 0; j < m; ++j)
            prod *= (mask >> j) & 1u ? link_cdf[static_cast<std::size_t>(j)] : 1.0 - link_cdf[static_cast<std::size_t>(j)];
        total += prod;
    }
    return std::clamp(total, 0.0, 1.0);
}

double brute_force_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k, double z)
{
    k.check_against(ensemble.size());
    if (ensemble.size() > 15)
        throw DomainError("brute_force_kth_max_cdf: at most 15 links");
    if (!(z > 0.0))
        throw DomainError("brute_force_kth_max_cdf: z must be positive");
    const auto nu = ensemble.link_nu();
    const auto sigma = ensemble.link_sigma();
    std::vector<double> cdf(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i)
        cdf[i] = link_cdf(nu[i], sigma[i], z);
    return brute_force_kth_max_cdf_from_link_cdfs(cdf, k.k());
}

double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& theoretical_cdf)
{
    const auto& x = empirical.samples();
    const auto n = static_cast<double>(x.size());
    double d = 0.0;
    Eigen::Index i = 0;
    while (i < x.size()) {
        Eigen::Index j = i;
        while (j + 1 < x.size() && x[j + 1] == x[i])
            ++j;
        const double f = theoretical_cdf(x[i]);
        if (std::isnan(f))
            throw DomainError("ks_distance: theoretical CDF returned NaN");
        d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(j + 1) / n)});
        i = j + 1;
    }
    return d;
}

MonteCarloEstimate mc_metric(const EmpiricalCdf& empirical, const MetricParams& params, MonteCarloMetric which)
{
    params.validate();
    const Eigen::Index n = empirical.n();
    if (n < 100)
        throw DomainError("mc_metric: at least 100 samples required");
    const Eigen::ArrayXd gamma = params.gamma_s * empirical.samples().max(0.0);
    const auto mean_se = [n](const Eigen::ArrayXd& v) {
        const double mean = v.mean();
        const double var = (v - mean).square().sum() / static_cast<double>(n - 1);
        return MonteCarloEstimate{mean, std::sqrt(var / static_cast<double>(n))};
    };

    switch (which) {
    case MonteCarloMetric::outage: {
        const double p = (gamma <= params.z_th).cast<double>().mean();
        return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
    }
    case MonteCarloMetric::avg_rate:
        return mean_se(gamma.log1p() / std::numbers::ln2);
    case MonteCarloMetric::eff_rate: {
        const auto m = mean_se((params.theta * gamma.log1p()).unaryExpr([](double v) { return std::exp(-v); }));
        return {-std::log2(m.estimate) / params.theta,
                m.std_error / (params.theta * std::numbers::ln2 * m.estimate)};
    }
    case MonteCarloMetric::bep: {
        const auto m = mean_se((-params.bep_rho * gamma).exp());
        return {params.bep_c * m.estimate, params.bep_c * m.std_error};
    }
    }
    throw std::logic_error("mc_metric: unknown metric");
}

}  // namespace kthmax
