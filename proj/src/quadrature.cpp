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


#include "kthmax/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "kthmax/specfun.hpp"

namespace kthmax {
namespace {

// Kronrod 15-point nodes (positive half) and weights; Gauss 7-point weights
// at the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double lo, double hi)
{
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double kronrod = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrod[i] * pair;
        if (i % 2 == 1)
            gauss += kGauss[i / 2] * pair;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& opts)
{
    if (!(std::isfinite(lo) && std::isfinite(hi)))
        throw DomainError("integrate: bounds must be finite");
    if (!(opts.rel_tol >= 0.0 && opts.abs_tol >= 0.0 && opts.rel_tol + opts.abs_tol > 0.0) ||
        opts.max_subintervals < 1)
        throw DomainError("integrate: tolerances must be non-negative, not both zero, with a positive budget");
    if (lo == hi)
        return {};
    double sign = 1.0;
    if (hi < lo) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::priority_queue<Segment> work;
    Segment first = kronrod15(f, lo, hi);
    double value = first.value;
    double error = first.error;
    int evaluations = 15;
    work.push(first);

    auto converged = [&] { return error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
    while (!converged()) {
        if (static_cast<int>(work.size()) >= opts.max_subintervals)
            throw QuadratureError("integrate: tolerance not met (estimate " + std::to_string(error) +
                                  " on value " + std::to_string(value) + ")");
        const Segment worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Segment left = kronrod15(f, worst.lo, mid);
        const Segment right = kronrod15(f, mid, worst.hi);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
        if (!std::isfinite(value))
            throw QuadratureError("integrate: non-finite integrand");
    }

    // Re-add the segment sums to shed drift from the incremental updates.
    value = 0.0;
    error = 0.0;
    while (!work.empty()) {
        value += work.top().value;
        error += work.top().error;
        work.pop();
    }
    return {sign * value, error, evaluations};
}

}  // namespace kthmax
