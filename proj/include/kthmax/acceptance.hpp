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


#ifndef KTHMAX_ACCEPTANCE_HPP
#define KTHMAX_ACCEPTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace kthmax {

inline constexpr std::uint64_t kAcceptanceSeed = 20'250'101;

struct AcceptanceOptions {
    /// n = 10^4 trials for every Monte Carlo criterion instead of 10^5 / 10^6.
    bool quick = false;
    std::uint64_t seed = kAcceptanceSeed;
    int threads = 0;
    /// Directory holding the pinned sampler fixture; empty skips the file check.
    std::filesystem::path fixture_dir;
};

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
    /// Informational lines that do not affect the verdict.
    std::vector<std::string> notes;
    double seconds = 0.0;
};

/// Name of the pinned fixture inside AcceptanceOptions::fixture_dir.
inline constexpr const char* kPinnedFixture = "fig1_k1.kecdf";

/// Runs every criterion in order. A criterion that throws is reported as
/// failed with the exception text; the remaining criteria still run.
/// `on_result` (optional) sees each result as soon as it is available.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// One table line per criterion plus indented notes.
std::string format_result(const CriterionResult& r);

}  // namespace kthmax

#endif  // KTHMAX_ACCEPTANCE_HPP
