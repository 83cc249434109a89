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

#ifndef KTHMAX_SPECFUN_HPP
#define KTHMAX_SPECFUN_HPP

#include <stdexcept>
#include <string>

namespace kthmax {

/// Raised when an argument is outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Series control shared by the special functions.
struct Accuracy {
    double rel_tol = 1e-12;
    int max_terms = 10'000;

    /// Throws DomainError unless 0 < rel_tol < 1e-3 and max_terms >= 16.
    void validate() const;
};

namespace specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// -- Marcum Q of order one ------------------------------------------------
//
// Q1(a, b) is the survival function of sqrt(X) where X is non-central
// chi-square with two degrees of freedom, unit scale and non-centrality a^2,
// evaluated at b. Both tails are computed as sums of non-negative terms
// (a Poisson(a^2/2) mixture of regularized gamma tails), so the smaller of
// Q1 and 1 - Q1 is always obtained to full relative precision.

struct MarcumPair {
    double q;  ///< Q1(alpha, beta)
    double p;  ///< 1 - Q1(alpha, beta)
};

/// Both tails from one evaluation; the smaller one carries full relative precision.
MarcumPair marcum_q1_pair(double alpha, double beta, const Accuracy& acc = {});

/// Q1(alpha, beta), alpha, beta >= 0 and finite.
double marcum_q1(double alpha, double beta, const Accuracy& acc = {});

/// 1 - Q1(alpha, beta), accurate when Q1 is close to one.
double marcum_p1(double alpha, double beta, const Accuracy& acc = {});

/// log Q1(alpha, beta); finite where Q1 itself underflows.
double log_marcum_q1(double alpha, double beta, const Accuracy& acc = {});

/// Large-beta approximation (2 pi alpha beta)^(-1/2) exp(-(beta - alpha)^2 / 2).
/// No accuracy promise outside beta >> alpha; intended as a cross-check only.
double marcum_q1_asymptotic(double alpha, double beta);
double log_marcum_q1_asymptotic(double alpha, double beta);

// -- Bessel ------------------------------------------------------------------

/// Modified Bessel function I0(x), x >= 0. Overflows to +inf beyond x ~ 713.
double bessel_i0(double x);

/// exp(-x) I0(x), finite for every x >= 0.
double bessel_i0_scaled(double x);

/// log I0(x), finite for every finite x >= 0.
double log_bessel_i0(double x);

// -- Gamma family --------------------------------------------------------------

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(k, x) / Gamma(k) for integer k >= 1 and x >= 0, from the finite sum
/// exp(-x) sum_{m<k} x^m / m! accumulated largest term first in log domain.
double reg_upper_gamma(int k, double x);

/// log of reg_upper_gamma(k, x); stays finite where the value underflows.
double log_reg_upper_gamma(int k, double x);

// -- Exponential integral ------------------------------------------------------

/// E1(x) for x > 0. Underflows to 0 for x beyond roughly 700.
double exp_integral_e1(double x, const Accuracy& acc = {});

/// exp(x) E1(x) for x > 0; accurate up to at least 1e6 without overflow.
double exp_integral_e1_scaled(double x, const Accuracy& acc = {});

// -- Gaussian tail ---------------------------------------------------------------

/// Q(x) = erfc(x / sqrt 2) / 2.
double gaussian_q(double x);

/// Leading asymptotic term x^-1 (2 pi)^(-1/2) exp(-x^2 / 2), x > 0.
double gaussian_q_asymptotic(double x);

}  // namespace specfun
}  // namespace kthmax

#endif  // KTHMAX_SPECFUN_HPP
