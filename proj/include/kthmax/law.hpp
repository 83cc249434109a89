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


#ifndef KTHMAX_LAW_HPP
#define KTHMAX_LAW_HPP

#include <Eigen/Core>
#include <string>
#include <variant>

#include "kthmax/evt.hpp"

namespace kthmax {

/// Shift-scale asymptotic law of the k-th maximum, in SNR-gain units.
struct AsymptoticLaw {
    NormConstants consts;
    OrderSelector k;
};

/// Poisson form Gamma(k, u(z)) / Gamma(k) for a concrete ensemble.
struct FiniteMLaw {
    LinkEnsemble ensemble;
    OrderSelector k;
};

/// The distribution a metric integrates against.
using Law = std::variant<AsymptoticLaw, FiniteMLaw>;

std::string law_name(const Law& law);

/// Finite-M form below `finite_m_below` links, or whenever the asymptotic
/// constants are unavailable (per-link sigma, M~ < 3); asymptotic form otherwise.
Law routed_law(const LinkEnsemble& ensemble, OrderSelector k, int finite_m_below = 200);

/// Right-continuous CDF in SNR-gain units. The finite-M form is zero below 0
/// and carries an atom Gamma(k, M)/Gamma(k) at 0.
double law_cdf(const Law& law, double z);
double law_pdf(const Law& law, double z);

/// Smallest z with law_cdf(z) >= prob, found by bisection; prob in (0, 1).
double law_quantile(const Law& law, double prob);

/// count equally spaced points over [q(1e-3), q(1 - 1e-3)].
Eigen::ArrayXd default_grid(const Law& law, int count = 512);

}  // namespace kthmax

#endif  // KTHMAX_LAW_HPP
