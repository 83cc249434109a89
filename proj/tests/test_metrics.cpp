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

#include <cmath>
#include <numbers>

#include "kthmax/metrics.hpp"
#include "kthmax/specfun.hpp"

namespace {

using namespace kthmax;

const LinkEnsemble kThirds({{2.0, 7}, {1.0, 7}, {0.5, 7}}, 2.0);

MetricParams unit_params()
{
    MetricParams p;
    p.gamma_s = 1.0;
    p.z_th = 10.0;
    return p;
}

TEST(Metrics, ParamsValidation)
{
    MetricParams p;
    EXPECT_NO_THROW(p.validate());
    p.bep_rho = 0.0;
    EXPECT_NO_THROW(p.validate());
    for (auto mutate : std::initializer_list<void (*)(MetricParams&)>{
             [](MetricParams& m) { m.gamma_s = 0.0; }, [](MetricParams& m) { m.z_th = -1.0; },
             [](MetricParams& m) { m.theta = 0.0; }, [](MetricParams& m) { m.bep_c = 1.5; },
             [](MetricParams& m) { m.bep_c = 0.0; }, [](MetricParams& m) { m.bep_rho = -0.1; },
             [](MetricParams& m) { m.gamma_s = std::nan(""); }}) {
        MetricParams bad;
        mutate(bad);
        EXPECT_THROW(bad.validate(), DomainError);
    }
}

TEST(Metrics, OutageIsCdfAtScaledThreshold)
{
    const NormConstants c = norm_constants(kThirds);
    MetricParams p = unit_params();
    for (double g : {0.5, 1.0, 3.0})
        for (double zth : {1.0, 10.0, 30.0})
            for (int k = 1; k <= 5; ++k) {
                p.gamma_s = g;
                p.z_th = zth;
                EXPECT_EQ(outage_probability(c, OrderSelector(k), p),
                          unnormalized_kth_max_cdf_asym(c, OrderSelector(k), zth / g));
                const Law finite = FiniteMLaw{kThirds, OrderSelector(k)};
                EXPECT_EQ(outage_probability(finite, p), law_cdf(finite, zth / g));
            }
}

TEST(Metrics, SeriesMatchesQuadratureForSmallShift)
{
    const NormConstants c{2.0, 1.0, 1.0, 1.0, 10};
    const MetricParams p = unit_params();
    const auto s = avg_throughput_series(c, OrderSelector(1), p);
    ASSERT_TRUE(s.converged);
    const double q = avg_throughput_quadrature(AsymptoticLaw{c, OrderSelector(1)}, p);
    EXPECT_NEAR(s.value, q, 1e-6 * q);
}

TEST(Metrics, SeriesAgreesWhereverConverged)
{
    int converged = 0;
    for (double a : {1.0, 2.0, 4.0})
        for (double b : {0.5, 2.0, 5.0})
            for (double p_const : {1.0, 1.5})
                for (int k : {1, 2, 3}) {
                    const NormConstants c{a, b, p_const, 1.0, 10};
                    const MetricParams params = unit_params();
                    const auto s = avg_throughput_series(c, OrderSelector(k), params);
                    if (!s.converged)
                        continue;
                    ++converged;
                    const double q = avg_throughput_quadrature(AsymptoticLaw{c, OrderSelector(k)}, params);
                    EXPECT_NEAR(s.value, q, 1e-6 * q) << a << " " << b << " " << p_const << " " << k;
                }
    EXPECT_GT(converged, 10);
}

TEST(Metrics, SeriesVanishingSnr)
{
    const NormConstants c{2.0, 1.0, 1.0, 1.0, 10};
    MetricParams p = unit_params();
    p.gamma_s = 1e-4;
    const Law law = AsymptoticLaw{c, OrderSelector(1)};
    const auto s = avg_throughput_series(c, OrderSelector(1), p);
    const double q = avg_throughput_quadrature(law, p);
    EXPECT_LT(q, 1e-3);
    if (s.converged) {
        EXPECT_NEAR(s.value, q, 1e-6);
    }
    EXPECT_NEAR(avg_throughput(law, p).value, q, 1e-6);
}

TEST(Metrics, LargeShiftFallsBackToQuadrature)
{
    const NormConstants c = norm_constants(kThirds);
    const MetricParams p = unit_params();
    EXPECT_FALSE(avg_throughput_series(c, OrderSelector(1), p).converged);
    const MetricValue v = avg_throughput(AsymptoticLaw{c, OrderSelector(1)}, p);
    EXPECT_EQ(v.method, MetricMethod::quadrature);
    EXPECT_TRUE(std::isfinite(v.value));
    EXPECT_THROW(avg_throughput_series(c, OrderSelector(1), p, 0), DomainError);
}

TEST(Metrics, NarrowLawGivesDeterministicRate)
{
    const NormConstants c{1e-6, 25.0, 1.0, 1.0, 10};
    const MetricParams p = unit_params();
    EXPECT_NEAR(avg_throughput_quadrature(AsymptoticLaw{c, OrderSelector(1)}, p), std::log2(26.0), 1e-6);
}

TEST(Metrics, ExpectationOfConstantIsOne)
{
    for (int k : {1, 3, 5}) {
        const Law asym = AsymptoticLaw{norm_constants(kThirds), OrderSelector(k)};
        const Law finite = FiniteMLaw{kThirds, OrderSelector(k)};
        EXPECT_NEAR(expect_over_law(asym, [](double) { return 1.0; }), 1.0, 1e-8);
        EXPECT_NEAR(expect_over_law(finite, [](double) { return 1.0; }), 1.0, 1e-8);
    }
    const Law law = FiniteMLaw{kThirds, OrderSelector(1)};
    EXPECT_THROW(expect_over_law(law, [](double) { return 1.0; }, {}, 0.0), DomainError);
    EXPECT_THROW(expect_over_law(law, [](double) { return 1.0; }, {}, 0.01), DomainError);
}

TEST(Metrics, AsymptoticMeanMatchesEulerShift)
{
    // Mean of the k = 1 law is b + a (log p + euler gamma).
    const NormConstants c = norm_constants(kThirds);
    const Law law = AsymptoticLaw{c, OrderSelector(1)};
    const double mean = expect_over_law(law, [](double z) { return z; });
    EXPECT_NEAR(mean, c.b_m + c.a_m * (std::log(c.p) + specfun::euler_gamma), 1e-6 * mean);
}

TEST(Metrics, RankMonotonicity)
{
    MetricParams p = unit_params();
    for (bool asymptotic : {true, false}) {
        double prev_out = -1.0;
        double prev_rate = 1e300;
        double prev_eff = 1e300;
        double prev_bep = -1.0;
        for (int k = 1; k <= 5; ++k) {
            const Law law = asymptotic ? Law{AsymptoticLaw{norm_constants(kThirds), OrderSelector(k)}}
                                       : Law{FiniteMLaw{kThirds, OrderSelector(k)}};
            const double out = outage_probability(law, p);
            const double rate = avg_throughput(law, p).value;
            const double eff = effective_throughput(law, p);
            const double bep = avg_bep(law, p).value;
            EXPECT_GE(out, prev_out);
            EXPECT_LT(rate, prev_rate);
            EXPECT_LT(eff, prev_eff);
            EXPECT_GE(bep, prev_bep);
            prev_out = out;
            prev_rate = rate;
            prev_eff = eff;
            prev_bep = bep;
        }
    }
}

TEST(Metrics, OrderingTransfersToRate)
{
    const NormConstants weak = norm_constants(LinkEnsemble::iid(1.0, 20, 2.0));
    const NormConstants strong = norm_constants(LinkEnsemble::iid(1.5, 20, 2.0));
    const auto r = stochastic_order_check(weak, strong, Eigen::ArrayXd::LinSpaced(100, 0.0, 80.0));
    ASSERT_EQ(r.verdict, OrderVerdict::second_dominates);
    const MetricParams p = unit_params();
    EXPECT_GE(avg_throughput_quadrature(AsymptoticLaw{strong, OrderSelector(1)}, p),
              avg_throughput_quadrature(AsymptoticLaw{weak, OrderSelector(1)}, p));
}

TEST(Metrics, EffectiveThroughputLimits)
{
    const Law law = FiniteMLaw{kThirds, OrderSelector(2)};
    MetricParams p = unit_params();
    p.theta = 1e-4;
    EXPECT_NEAR(effective_throughput(law, p), avg_throughput_quadrature(law, p), 1e-3);
    for (int k : {1, 3, 5})
        for (double g : {0.5, 1.0, 4.0}) {
            MetricParams q = unit_params();
            q.gamma_s = g;
            const Law a = AsymptoticLaw{norm_constants(kThirds), OrderSelector(k)};
            EXPECT_LE(effective_throughput(a, q, EffectiveMode::high_snr_approx), effective_throughput(a, q));
        }
}

TEST(Metrics, BepClosedFormAndMgf)
{
    const NormConstants c = norm_constants(LinkEnsemble({{1.0, 15}, {0.5, 5}}, 2.0));
    const MetricParams p = unit_params();
    for (int k = 1; k <= 5; ++k) {
        const double s = p.bep_rho * p.gamma_s;
        const BepReport r = avg_bep(c, OrderSelector(k), p);
        const double identity = p.bep_c * std::exp(-c.b_m * s) * normalized_mgf(OrderSelector(k), -c.a_m * s);
        EXPECT_NEAR(r.value, identity, 1e-12 * identity);
        EXPECT_FALSE(r.model_out_of_range);
        EXPECT_EQ(avg_bep(AsymptoticLaw{c, OrderSelector(k)}, p).method, MetricMethod::closed_form);
    }
}

TEST(Metrics, BepCollapsesToCeiling)
{
    const NormConstants c = norm_constants(kThirds);
    MetricParams p = unit_params();
    p.bep_rho = 0.0;
    EXPECT_EQ(avg_bep(c, OrderSelector(3), p).value, p.bep_c);
    p.bep_rho = 0.25;
    p.gamma_s = 1e-12;
    EXPECT_NEAR(avg_bep(c, OrderSelector(3), p).value, p.bep_c, 1e-10);

    // Negative shift inflates the closed form past the ceiling.
    const NormConstants shifted{8.0, -40.0, 1.0, 1.0, 10};
    p.gamma_s = 1.0;
    const BepReport r = avg_bep(shifted, OrderSelector(1), p);
    EXPECT_TRUE(r.model_out_of_range);
    EXPECT_EQ(r.value, p.bep_c);
    EXPECT_GT(r.unclipped, p.bep_c);
}

TEST(Metrics, FiniteMBepByQuadrature)
{
    const Law law = FiniteMLaw{kThirds, OrderSelector(1)};
    const MetricParams p = unit_params();
    const MetricValue v = avg_bep(law, p);
    EXPECT_EQ(v.method, MetricMethod::quadrature);
    EXPECT_GT(v.value, 0.0);
    EXPECT_LT(v.value, p.bep_c);
}

TEST(Metrics, AllFigureConfigurationsFinite)
{
    const std::vector<LinkEnsemble> ensembles{
        LinkEnsemble::iid(1.0, 20, 2.0), LinkEnsemble({{1.0, 10}, {0.5, 10}}, 2.0), kThirds,
        LinkEnsemble({{2.0, 14}, {1.0, 14}, {0.5, 14}}, 2.0), LinkEnsemble({{1.0, 15}, {0.5, 5}}, 2.0)};
    const MetricParams p = unit_params();
    for (const auto& e : ensembles)
        for (int k = 1; k <= 5; ++k)
            for (const Law& law : {Law{AsymptoticLaw{norm_constants(e), OrderSelector(k)}},
                                   Law{FiniteMLaw{e, OrderSelector(k)}}}) {
                EXPECT_TRUE(std::isfinite(outage_probability(law, p)));
                EXPECT_TRUE(std::isfinite(avg_throughput(law, p).value));
                EXPECT_TRUE(std::isfinite(effective_throughput(law, p)));
                EXPECT_TRUE(std::isfinite(avg_bep(law, p).value));
            }
}

}  // namespace
