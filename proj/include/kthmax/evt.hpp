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


#ifndef KTHMAX_EVT_HPP
#define KTHMAX_EVT_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "kthmax/ensemble.hpp"

namespace kthmax {

/// Normalizing constants of the k-th maximum: (Z - b_m) / a_m converges to the
/// law Gamma(k, p e^{-z}) / Gamma(k).
struct NormConstants {
    double a_m = 1.0;
    double b_m = 0.0;
    double p = 1.0;
    double nu_tilde = 0.0;
    int m_tilde = 0;
};

struct DominantGroup {
    double nu_tilde;
    int m_tilde;
};

/// Largest LOS amplitude present and its multiplicity. When override_nu is
/// given it must match one of the ensemble's groups.
DominantGroup select_nu_tilde(const LinkEnsemble& ensemble,
                              std::optional<double> override_nu = std::nullopt);

/// a_m = 2 sigma^2 and b_m, p from the dominant group. Requires a common sigma
/// and M~ >= 3 so that log log M~ is positive.
NormConstants norm_constants(const LinkEnsemble& ensemble,
                             std::optional<double> override_nu = std::nullopt);

// -- Asymptotic law ---------------------------------------------------------

/// Gamma(k, p e^{-z}) / Gamma(k) in normalized units.
double normalized_kth_max_cdf(const NormConstants& c, OrderSelector k, double z);
/// (p e^{-z})^k exp(-p e^{-z}) / Gamma(k).
double normalized_kth_max_pdf(const NormConstants& c, OrderSelector k, double z);

/// Shift-scale form in SNR-gain units: F((z - b_m) / a_m).
double unnormalized_kth_max_cdf_asym(const NormConstants& c, OrderSelector k, double z);
double unnormalized_kth_max_pdf_asym(const NormConstants& c, OrderSelector k, double z);

Eigen::ArrayXd normalized_kth_max_cdf(const NormConstants& c, OrderSelector k,
                                      const Eigen::ArrayXd& z);
Eigen::ArrayXd unnormalized_kth_max_cdf_asym(const NormConstants& c, OrderSelector k,
                                             const Eigen::ArrayXd& z);

/// Moment generating function of the normalized law, Gamma(k - t) / Gamma(k), t < k.
double normalized_mgf(OrderSelector k, double t);

// -- Finite-M Poisson form ------------------------------------------------------

/// u(z) = sum_m Q1(nu_m / sigma_m, sqrt(z) / sigma_m), z > 0.
double finite_m_u(const LinkEnsemble& ensemble, double z);
/// u'(z) = -sum_m f_m(z) with f_m the single-link density, z > 0.
double finite_m_u_prime(const LinkEnsemble& ensemble, double z);

/// sum_{m<k} u^m e^{-u} / m! = Gamma(k, u(z)) / Gamma(k).
double finite_m_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k, double z);
/// -u'(z) u^{k-1} e^{-u} / Gamma(k); valid for every k >= 1.
double finite_m_kth_max_pdf(const LinkEnsemble& ensemble, OrderSelector k, double z);

Eigen::ArrayXd finite_m_kth_max_cdf(const LinkEnsemble& ensemble, OrderSelector k,
                                    const Eigen::ArrayXd& z);

// -- Stochastic ordering -----------------------------------------------------------

enum class OrderVerdict { second_dominates, first_dominates, crossing };

const char* to_string(OrderVerdict v);

struct OrderReport {
    OrderVerdict verdict;
    /// (z - b1)/a1 - (z - b2)/a2 per grid point; >= 0 where the second law dominates.
    Eigen::ArrayXd condition;
    /// First grid index whose condition sign differs from the previous point's.
    std::optional<Eigen::Index> sign_change_index;
};

/// Evaluates the affine ordering condition (z - b2)/a2 <= (z - b1)/a1 on a grid.
/// Both constants must share p. A dominance verdict is cross-checked against
/// the CDFs of rank k on the same grid.
OrderReport stochastic_order_check(const NormConstants& first, const NormConstants& second,
                                   const Eigen::ArrayXd& z_grid, OrderSelector k = OrderSelector(1));

}  // namespace kthmax

#endif  // KTHMAX_EVT_HPP
