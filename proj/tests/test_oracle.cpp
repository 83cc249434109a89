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


#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "kthmax/oracle.hpp"
#include "kthmax/specfun.hpp"

namespace {

using namespace kthmax;

TEST(ExactCdf, SmallCases)
{
    const std::array<double, 2> half2{0.5, 0.5};
    EXPECT_DOUBLE_EQ(exact_kth_max_cdf_from_link_cdfs(half2, 1), 0.25);
    EXPECT_DOUBLE_EQ(exact_kth_max_cdf_from_link_cdfs(half2, 2), 0.75);
    const std::array<double, 3> half3{0.5, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(exact_kth_max_cdf_from_link_cdfs(half3, 1), 0.125);
    const std::array<double, 4> half4{0.5, 0.5, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(exact_kth_max_cdf_from_link_cdfs(half4, 2), 0.3125);
    EXPECT_DOUBLE_EQ(brute_force_kth_max_cdf_from_link_cdfs(half4, 2), 0.3125);
    EXPECT_DOUBLE_EQ(brute_force_kth_max_cdf_from_link_cdfs(half2, 1), 0.25);
    EXPECT_DOUBLE_EQ(brute_force_kth_max_cdf_from_link_cdfs(half2, 2), 0.75);
}

TEST(ExactCdf, SingleLinkIsLinkCdf)
{
    const LinkEnsemble one = LinkEnsemble::iid(1.0, 1, 2.0);
    for (double z : {0.1, 1.0, 9.0, 40.0}) {
        EXPECT_NEAR(exact_kth_max_cdf(one, OrderSelector(1), z), link_cdf(1.0, 2.0, z), 1e-15);
        EXPECT_NEAR(brute_force_kth_max_cdf(one, OrderSelector(1), z), link_cdf(1.0, 2.0, z), 1e-15);
    }
}

TEST(ExactCdf, Errors)
{
    const LinkEnsemble e = LinkEnsemble::iid(1.0, 4, 2.0);
    EXPECT_THROW(exact_kth_max_cdf(e, OrderSelector(1), 0.0), DomainError);
    EXPECT_THROW(brute_force_kth_max_cdf(e, OrderSelector(1), -1.0), DomainError);
    EXPECT_THROW(exact_kth_max_cdf(e, OrderSelector(5), 1.0), DomainError);
    EXPECT_THROW(brute_force_kth_max_cdf(LinkEnsemble::iid(1.0, 16, 2.0), OrderSelector(1), 1.0), DomainError);
    const std::array<double, 2> bad{0.5, 1.5};
    EXPECT_THROW(exact_kth_max_cdf_from_link_cdfs(bad, 1), DomainError);
}

TEST(ExactCdf, DynamicProgramMatchesEnumeration)
{
    std::mt19937_64 rng(7);
    const std::array<double, 6> nus{0.3, 0.5, 1.0, 1.5, 2.0, 3.0};
    const std::array<double, 3> sigmas{0.5, 1.0, 2.0};
    std::uniform_int_distribution<int> pick_m(2, 8);
    std::uniform_int_distribution<std::size_t> pick_nu(0, nus.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_sigma(0, sigmas.size() - 1);
    std::uniform_real_distribution<double> log_z(std::log(0.05), std::log(200.0));
    for (int trial = 0; trial < 200; ++trial) {
        const int m = pick_m(rng);
        std::vector<LinkGroup> groups;
        for (int i = 0; i < m; ++i) {
            const double nu = nus[pick_nu(rng)];
            auto it = std::find_if(groups.begin(), groups.end(), [nu](const LinkGroup& g) { return g.nu == nu; });
            if (it == groups.end())
                groups.push_back({nu, 1});
            else
                ++it->count;
        }
        std::vector<double> link_sigma;
        for (int i = 0; i < m; ++i)
            link_sigma.push_back(sigmas[pick_sigma(rng)]);
        const LinkEnsemble e(groups, 1.0, link_sigma);
        const int k = std::uniform_int_distribution<int>(1, m)(rng);
        const double z = std::exp(log_z(rng));
        EXPECT_NEAR(exact_kth_max_cdf(e, OrderSelector(k), z), brute_force_kth_max_cdf(e, OrderSelector(k), z), 1e-12)
            << e.describe() << " k=" << k << " z=" << z;
    }
}

TEST(Sampler, PerLinkMoments)
{
    const Eigen::Index n = 1'000'000;
    const EmpiricalCdf s = sample_kth_max(LinkEnsemble::iid(1.0, 1, 2.0), OrderSelector(1), n, 11);
    const double mean = s.samples().mean();
    const double sd = std::sqrt((s.samples() - mean).square().sum() / (n - 1));
    EXPECT_NEAR(mean, 9.0, 3.0 * sd / std::sqrt(static_cast<double>(n)));
    const double f = 1.0 - specfun::marcum_q1(0.5, 1.5);
    EXPECT_NEAR(s.cdf(9.0), f, 3.0 * std::sqrt(f * (1.0 - f) / n));
}

TEST(Sampler, SingleLinkKs)
{
    const Eigen::Index n = 100'000;
    const EmpiricalCdf s = sample_kth_max(LinkEnsemble::iid(1.5, 1, 1.0), OrderSelector(1), n, 12);
    EXPECT_LE(ks_distance(s, [](double z) { return link_cdf(1.5, 1.0, z); }), 1.36 / std::sqrt(static_cast<double>(n)));
}

TEST(Sampler, AgreesWithExactLaw)
{
    const Eigen::Index n = 100'000;
    const LinkEnsemble e({{1.0, 10}, {0.5, 10}}, 2.0);
    for (int k : {1, 3}) {
        const EmpiricalCdf s = sample_kth_max(e, OrderSelector(k), n, 13 + k);
        const double d = ks_distance(s, [&](double z) { return z > 0.0 ? exact_kth_max_cdf(e, OrderSelector(k), z) : 0.0; });
        EXPECT_LE(d, 1.95 / std::sqrt(static_cast<double>(n)));
    }
}

TEST(Sampler, DeterministicAcrossThreads)
{
    const LinkEnsemble e({{2.0, 3}, {1.0, 4}}, 1.5);
    const Eigen::Index n = 3 * kSamplerChunk + 17;
    const EmpiricalCdf one = sample_kth_max(e, OrderSelector(2), n, 99, 1);
    for (int threads : {2, 3, 8})
        EXPECT_TRUE(one == sample_kth_max(e, OrderSelector(2), n, 99, threads)) << threads;
    EXPECT_FALSE(one == sample_kth_max(e, OrderSelector(2), n, 100, 1));
    EXPECT_EQ(one.n(), n);
    EXPECT_EQ(one.seed(), 99u);
    EXPECT_NE(one.config_digest().find("mt19937_64"), std::string::npos);
    EXPECT_NE(one.config_digest(), sample_kth_max(e, OrderSelector(1), n, 99, 1).config_digest());
}

TEST(Sampler, MonotoneCouplingInRank)
{
    const LinkEnsemble e({{2.0, 3}, {1.0, 4}}, 1.5);
    const std::vector<int> ranks{1, 2, 3, 7};
    const auto all = sample_order_statistics(e, ranks, 5000, 5, 2);
    ASSERT_EQ(all.size(), ranks.size());
    for (std::size_t r = 1; r < all.size(); ++r) {
        // Same draws, so each quantile of a deeper rank sits below the shallower one.
        EXPECT_TRUE((all[r].samples() <= all[r - 1].samples()).all());
    }
    EXPECT_TRUE((all[1].samples() == sample_kth_max(e, OrderSelector(2), 5000, 5, 3).samples()).all());
    EXPECT_THROW(sample_kth_max(e, OrderSelector(1), 0, 5), DomainError);
}

TEST(Empirical, StepFunctionAndAffine)
{
    Eigen::ArrayXd x(5);
    x << 3.0, 1.0, 2.0, 2.0, 5.0;
    const EmpiricalCdf e(x, 1, "t");
    EXPECT_EQ(e.samples()[0], 1.0);
    EXPECT_DOUBLE_EQ(e.cdf(2.0), 0.6);
    EXPECT_DOUBLE_EQ(e.cdf_left(2.0), 0.2);
    EXPECT_DOUBLE_EQ(e.cdf(0.0), 0.0);
    EXPECT_DOUBLE_EQ(e.cdf(5.0), 1.0);
    const EmpiricalCdf t = e.affine(2.0, 1.0);
    EXPECT_DOUBLE_EQ(t.samples()[4], 2.0);
    EXPECT_THROW(e.affine(0.0, 1.0), DomainError);
    EXPECT_THROW(EmpiricalCdf(Eigen::ArrayXd(), 1, "t"), DomainError);
}

TEST(Ks, Properties)
{
    Eigen::ArrayXd distinct(4);
    distinct << 1.0, 2.0, 3.0, 4.0;
    const EmpiricalCdf d(distinct, 1, "t");
    EXPECT_LE(ks_distance(d, [&](double z) { return d.cdf(z); }), 1.0 / 4.0);

    Eigen::ArrayXd x(4);
    x << 1.0, 2.0, 2.0, 4.0;
    const EmpiricalCdf e(x, 1, "t");
    EXPECT_GE(ks_distance(e, [](double) { return 0.5; }), 0.5 - 1.0 / 4.0);
    // Tied pair: the step from 0.25 to 0.75 is checked at both limits.
    EXPECT_DOUBLE_EQ(ks_distance(e, [](double z) { return z < 2.0 ? 0.25 : (z == 2.0 ? 0.5 : 0.75); }), 0.25);
}

TEST(MonteCarlo, Metrics)
{
    Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(200, 1.0, 200.0);
    const EmpiricalCdf e(x, 1, "t");
    MetricParams p;
    p.z_th = 0.5;
    auto out = mc_metric(e, p, MonteCarloMetric::outage);
    EXPECT_EQ(out.estimate, 0.0);
    EXPECT_EQ(out.std_error, 0.0);
    p.z_th = 50.0;
    out = mc_metric(e, p, MonteCarloMetric::outage);
    EXPECT_DOUBLE_EQ(out.estimate, 0.25);
    EXPECT_DOUBLE_EQ(out.std_error, std::sqrt(0.25 * 0.75 / 200));

    p.bep_rho = 0.0;
    const auto bep = mc_metric(e, p, MonteCarloMetric::bep);
    EXPECT_EQ(bep.estimate, p.bep_c);
    EXPECT_EQ(bep.std_error, 0.0);

    const auto rate = mc_metric(e, p, MonteCarloMetric::avg_rate);
    EXPECT_NEAR(rate.estimate, (x + 1.0).log().mean() / std::log(2.0), 1e-12);

    p.theta = 2.0;
    const auto eff = mc_metric(e, p, MonteCarloMetric::eff_rate);
    EXPECT_NEAR(eff.estimate, -std::log2((x + 1.0).pow(-2.0).mean()) / 2.0, 1e-12);
    EXPECT_GT(eff.std_error, 0.0);

    EXPECT_THROW(mc_metric(EmpiricalCdf(Eigen::ArrayXd::Ones(99), 1, "t"), p, MonteCarloMetric::outage), DomainError);
}

}  // namespace
