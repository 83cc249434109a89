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


#ifndef KTHMAX_QUADRATURE_HPP
#define KTHMAX_QUADRATURE_HPP

#include <functional>
#include <stdexcept>

namespace kthmax {

/// Raised when an adaptive integral misses its tolerance within the budget.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_subintervals = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration over a finite [lo, hi].
/// The interval with the largest error estimate is bisected until the summed
/// estimate meets max(abs_tol, rel_tol * |value|). Throws QuadratureError when
/// the subinterval budget runs out first, DomainError on infinite bounds or
/// unusable options.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& opts = {});

}  // namespace kthmax

#endif  // KTHMAX_QUADRATURE_HPP
