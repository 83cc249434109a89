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

#include "kthmax/law.hpp"
#include "kthmax/specfun.hpp"

namespace {

using namespace kthmax;

const LinkEnsemble kHalves({{1.0, 10}, {0.5, 10}}, 2.0);

TEST(Law, QuantileInvertsCdf)
{
    const Law asym = AsymptoticLaw{norm_constants(kHalves), OrderSelector(2)};
    const Law finite = FiniteMLaw{kHalves, OrderSelector(2)};
    for (const Law& law : {asym, finite}) {
        for (double prob : {1e-9, 1e-3, 0.1, 0.5, 0.9, 0.999, 1.0 - 1e-12}) {
            const double z = law_quantile(law, prob);
            if (z == 0.0) {
                EXPECT_GE(law_cdf(law, 0.0), prob);
                continue;
            }
            EXPECT_NEAR(law_cdf(law, z), prob, 1e-9 * std::max(prob, 1e-3)) << law_name(law) << " " << prob;
        }
    }
}

TEST(Law, AsymptoticQuantileClosedFormForKOne)
{
    const NormConstants c = norm_constants(kHalves);
    const Law law = AsymptoticLaw{c, OrderSelector(1)};
    for (double prob : {0.01, 0.5, 0.99})
        EXPECT_NEAR(law_quantile(law, prob), c.b_m - c.a_m * std::log(-std::log(prob) / c.p), 1e-10);
}

TEST(Law, QuantileDomain)
{
    const Law law = FiniteMLaw{kHalves, OrderSelector(1)};
    EXPECT_THROW(law_quantile(law, 0.0), DomainError);
    EXPECT_THROW(law_quantile(law, 1.0), DomainError);
    EXPECT_THROW(law_quantile(law, std::nan("")), DomainError);
}

TEST(Law, FiniteMAtomAtZero)
{
    // Poisson(M) count of exceedances of zero: the law puts Q(k, M) on z = 0.
    const LinkEnsemble small = LinkEnsemble::iid(1.0, 3, 1.0);
    const Law law = FiniteMLaw{small, OrderSelector(3)};
    const double atom = specfun::reg_upper_gamma(3, 3.0);
    EXPECT_DOUBLE_EQ(law_cdf(law, 0.0), atom);
    EXPECT_EQ(law_cdf(law, -1.0), 0.0);
    EXPECT_EQ(law_pdf(law, -1.0), 0.0);
    EXPECT_EQ(law_quantile(law, 0.5 * atom), 0.0);
    EXPECT_GT(law_quantile(law, atom + 0.01), 0.0);
}

TEST(Law, Routing)
{
    const OrderSelector k(2);
    EXPECT_EQ(law_name(routed_law(kHalves, k)), "finite_m");
    EXPECT_EQ(law_name(routed_law(LinkEnsemble::iid(1.0, 400, 2.0), k)), "asymptotic");
    EXPECT_EQ(law_name(routed_law(kHalves, k, 20)), "asymptotic");
    EXPECT_EQ(law_name(routed_law(LinkEnsemble({{1.0, 2}, {0.5, 398}}, 2.0), k)), "finite_m");
    const LinkEnsemble mixed_sigma({{1.0, 400}}, 2.0, std::vector<double>(400, 1.5));
    EXPECT_EQ(law_name(routed_law(mixed_sigma, k)), "finite_m");
    EXPECT_THROW(routed_law(LinkEnsemble::iid(1.0, 3, 2.0), OrderSelector(4)), DomainError);
}

TEST(Law, DefaultGridSpansCentralMass)
{
    const Law law = AsymptoticLaw{norm_constants(kHalves), OrderSelector(1)};
    const Eigen::ArrayXd g = default_grid(law, 64);
    ASSERT_EQ(g.size(), 64);
    EXPECT_NEAR(law_cdf(law, g[0]), 1e-3, 1e-12);
    EXPECT_NEAR(law_cdf(law, g[63]), 1.0 - 1e-3, 1e-12);
    for (Eigen::Index i = 1; i < g.size(); ++i)
        EXPECT_GT(g[i], g[i - 1]);
    EXPECT_THROW(default_grid(law, 1), DomainError);
}

TEST(Law, PdfMatchesCdfSlope)
{
    const Law law = FiniteMLaw{kHalves, OrderSelector(5)};
    for (double z = 2.0; z < 60.0; z += 3.0) {
        const double h = 1e-4;
        EXPECT_NEAR((law_cdf(law, z + h) - law_cdf(law, z - h)) / (2 * h), law_pdf(law, z), 1e-7);
    }
}

}  // namespace
