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


#ifndef KTHMAX_METRICS_HPP
#define KTHMAX_METRICS_HPP

#include <functional>
#include <string>

#include "kthmax/law.hpp"
#include "kthmax/quadrature.hpp"

namespace kthmax {

/// Receiver-side parameters. gamma_s = P / delta is the linear base SNR;
/// theta is the delay QoS exponent; the conditional BEP is C exp(-rho gamma).
struct MetricParams {
    double gamma_s = 1.0;
    double z_th = 1.0;
    double theta = 1.0;
    double bep_c = 0.25;
    double bep_rho = 0.25;

    void validate() const;
};

/// Instrumented partial sum of the alternating average-throughput series.
struct SeriesReport {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
    double max_term_magnitude = 0.0;
};

enum class EffectiveMode { exact, high_snr_approx };

struct BepReport {
    double value;
    double unclipped;
    bool model_out_of_range;
};

/// Which route produced a theory value.
enum class MetricMethod { closed_form, series, quadrature };
const char* to_string(MetricMethod m);

struct MetricValue {
    double value;
    MetricMethod method;
};

/// P(gamma_s Z <= z_th) under the asymptotic law; the same code path as
/// unnormalized_kth_max_cdf_asym at z_th / gamma_s.
double outage_probability(const NormConstants& c, OrderSelector k, const MetricParams& params);
/// Outage under either law.
double outage_probability(const Law& law, const MetricParams& params);

/// Term-wise evaluation of
///   (p^k / (Gamma(k) ln 2)) sum_n (-1)^n p^n / (n! (k+n)) e^{A_n} E1(B_n),
///   B_n = (k+n) / (a gamma_s),  A_n = B_n (1 + gamma_s b),
/// with every term held as sign and log-magnitude. Not converged when the cap
/// is hit, a log-magnitude passes 700, or the largest term exceeds the result
/// by more than a factor 1e6 (cancellation would eat the precision).
SeriesReport avg_throughput_series(const NormConstants& c, OrderSelector k, const MetricParams& params,
                                   int cap = 500);

/// True when the series is worth attempting: (1 + gamma_s b) / (gamma_s a) <= 50.
bool series_admissible(const NormConstants& c, const MetricParams& params);

/// E[h(max(Z, 0))] by adaptive quadrature from max(0, q(lower_prob)) upward,
/// in pieces as wide as the bulk of the law; mass below the cut counts as h there.
double expect_over_law(const Law& law, const std::function<double(double)>& h,
                       const QuadratureOptions& opts = {}, double lower_prob = 1e-12);

/// E[log2(1 + gamma_s Z)] by quadrature.
double avg_throughput_quadrature(const Law& law, const MetricParams& params);

/// Series when admissible and converged, quadrature otherwise. Finite-M laws
/// always use quadrature.
MetricValue avg_throughput(const Law& law, const MetricParams& params);

/// -(1/theta) log2 E[(1 + gamma_s Z)^-theta] (exact) or with (gamma_s Z)^-theta
/// (high-SNR approximation, a lower bound; requires q(1e-9) > 0).
double effective_throughput(const Law& law, const MetricParams& params,
                            EffectiveMode mode = EffectiveMode::exact);

/// C exp(-b rho gamma_s) Gamma(k + a rho gamma_s) / Gamma(k), clipped at C.
BepReport avg_bep(const NormConstants& c, OrderSelector k, const MetricParams& params);

/// C E[exp(-rho gamma_s Z)]: closed form for the asymptotic law, quadrature
/// for the finite-M law.
MetricValue avg_bep(const Law& law, const MetricParams& params);

}  // namespace kthmax

#endif  // KTHMAX_METRICS_HPP
