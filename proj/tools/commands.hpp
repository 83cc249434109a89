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


#ifndef KTHMAX_TOOLS_COMMANDS_HPP
#define KTHMAX_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"

namespace kthmax::cli {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Output of one subcommand: versioned schema, key/value metadata and rows.
struct Table {
    std::string schema;
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// CSV: "# schema=..." and "# key=value" comment lines, a header row, then
/// RFC 4180 records with shortest round-trip numbers. JSON: one object with
/// "schema", "meta", "columns" and "rows" (an array of objects).
void write_table(const Table& table, OutputFormat format, std::ostream& os);

struct CommandResult {
    Table table;
    /// Set when at least one row carries a numerical error marker.
    bool numerical_failure = false;
    /// Human-readable summary lines for stderr.
    std::vector<std::string> summary;
};

CommandResult cmd_cdf(const ExperimentConfig& config);
CommandResult cmd_metric(const ExperimentConfig& config);
CommandResult cmd_order(const ExperimentConfig& config);

}  // namespace kthmax::cli

#endif  // KTHMAX_TOOLS_COMMANDS_HPP
