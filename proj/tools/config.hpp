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


#ifndef KTHMAX_TOOLS_CONFIG_HPP
#define KTHMAX_TOOLS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kthmax/acceptance.hpp"
#include "kthmax/ensemble.hpp"
#include "kthmax/metrics.hpp"

namespace kthmax::cli {

/// Invalid configuration; the message names the file position or field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// LOS groups given as relative weights so one spec covers several M.
struct EnsembleSpec {
    std::vector<double> nu{1.0};
    std::vector<double> weights{1.0};
    std::vector<int> m{20};
    double sigma = 2.0;
    std::optional<std::vector<double>> per_link_sigma;
    std::optional<double> nu_tilde;

    /// Group counts M w_i / sum(w); each must come out integral.
    LinkEnsemble build(int m_total) const;
};

struct GridSpec {
    bool automatic = true;
    double min = 0.0;
    double max = 0.0;
    int count = 512;
};

enum class Mode { asymptotic, finite_m, both, automatic };
enum class OutputFormat { csv, json };
enum class MetricKind { outage, rate, eff_rate, bep };

const char* to_string(Mode m);
const char* to_string(MetricKind m);
Mode parse_mode(const std::string& text);
OutputFormat parse_format(const std::string& text);
MetricKind parse_metric(const std::string& text);

struct ExperimentConfig {
    EnsembleSpec ensemble;
    std::optional<EnsembleSpec> ensemble2;
    std::vector<int> k{1};
    MetricKind metric = MetricKind::rate;
    MetricParams params;
    GridSpec grid;
    Mode mode = Mode::automatic;
    bool exact = true;
    std::int64_t mc_n = 100'000;
    std::uint64_t seed = kAcceptanceSeed;
    std::string out_path = "-";
    OutputFormat format = OutputFormat::csv;

    /// Cross-field checks; throws ConfigError.
    void validate() const;
};

/// Parses the YAML config text. `origin` prefixes diagnostics.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::string& path);

/// YAML text that parses back to an equal configuration.
std::string dump_config(const ExperimentConfig& config);

struct FigurePreset {
    std::string name;
    std::string summary;
    ExperimentConfig config;
};

const std::vector<FigurePreset>& presets();
const FigurePreset& find_preset(const std::string& name);

}  // namespace kthmax::cli

#endif  // KTHMAX_TOOLS_CONFIG_HPP
