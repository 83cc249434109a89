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

#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace kthmax;
using namespace kthmax::cli;

std::string render(const CommandResult& r, OutputFormat f)
{
    std::ostringstream os;
    write_table(r.table, f, os);
    return os.str();
}

std::string first_data_line(const std::string& csv)
{
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (line.empty() || line[0] != '#')
            return line;
    return {};
}

std::string config_error(const std::string& text)
{
    try {
        parse_config(text, "t.yaml");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "no error";
}

ExperimentConfig small_cdf_config()
{
    ExperimentConfig c = parse_config(R"(
ensemble:
  nu: [1.0, 0.5]
  weights: [1, 1]
  m: [10]
  sigma: 2.0
order:
  k: [1, 2]
grid:
  auto: false
  min: 5
  max: 40
  count: 8
run:
  mode: both
mc:
  n: 2000
  seed: 3
)");
    return c;
}

TEST(Config, Defaults)
{
    const ExperimentConfig c = parse_config("");
    EXPECT_EQ(c.ensemble.nu, std::vector<double>{1.0});
    EXPECT_EQ(c.ensemble.m, std::vector<int>{20});
    EXPECT_EQ(c.ensemble.sigma, 2.0);
    EXPECT_EQ(c.k, std::vector<int>{1});
    EXPECT_EQ(c.mode, Mode::automatic);
    EXPECT_EQ(c.format, OutputFormat::csv);
    EXPECT_TRUE(c.grid.automatic);
    EXPECT_EQ(c.grid.count, 512);
    EXPECT_EQ(c.seed, kAcceptanceSeed);
}

TEST(Config, DiagnosticsCarryPosition)
{
    const std::string unknown = config_error("ensemble:\n  nu: [1.0]\n  sigmaa: 3\n");
    EXPECT_NE(unknown.find("t.yaml:3:"), std::string::npos) << unknown;
    EXPECT_NE(unknown.find("sigmaa"), std::string::npos) << unknown;

    const std::string type = config_error("mc:\n  n: lots\n");
    EXPECT_NE(type.find("t.yaml:2:"), std::string::npos) << type;

    const std::string syntax = config_error("ensemble: [\n");
    EXPECT_NE(syntax.find("t.yaml:"), std::string::npos) << syntax;

    EXPECT_NE(config_error("bogus: 1\n").find("bogus"), std::string::npos);
    EXPECT_NE(config_error("run:\n  mode: sideways\n"), "no error");
    EXPECT_NE(config_error("output:\n  format: xml\n"), "no error");
}

TEST(Config, Validation)
{
    EXPECT_NE(config_error("ensemble:\n  nu: [1.0, 0.5]\n  weights: [1, 1]\n  m: [21]\n"), "no error");
    EXPECT_NE(config_error("ensemble:\n  sigma: -1\n"), "no error");
    EXPECT_NE(config_error("ensemble:\n  nu: [0]\n"), "no error");
    EXPECT_NE(config_error("order:\n  k: [0]\n"), "no error");
    EXPECT_NE(config_error("order:\n  k: [30]\n"), "no error");
    EXPECT_NE(config_error("metric:\n  gamma_s: 0\n"), "no error");
    EXPECT_NE(config_error("grid:\n  auto: false\n  min: 5\n  max: 1\n"), "no error");
    EXPECT_NE(config_error("mc:\n  n: 10\n"), "no error");
    EXPECT_THROW(load_config("/nonexistent/kthmax.yaml"), ConfigError);
}

TEST(Config, GroupSplitBuildsEnsemble)
{
    const ExperimentConfig c = parse_config("ensemble:\n  nu: [1.0, 0.5]\n  weights: [3, 1]\n  m: [20]\n");
    const LinkEnsemble e = c.ensemble.build(20);
    ASSERT_EQ(e.group_count(), 2);
    EXPECT_EQ(e.groups()[0].count, 15);
    EXPECT_EQ(e.groups()[1].count, 5);
    EXPECT_THROW(c.ensemble.build(22), ConfigError);
}

TEST(Config, PresetsRoundTrip)
{
    ASSERT_EQ(presets().size(), 6u);
    for (const auto& p : presets()) {
        const std::string dumped = dump_config(p.config);
        const ExperimentConfig back = parse_config(dumped, p.name);
        EXPECT_EQ(dump_config(back), dumped) << p.name;
    }
    EXPECT_THROW(find_preset("fig7"), ConfigError);
}

TEST(Config, PresetParameters)
{
    const auto& fig1 = find_preset("fig1").config;
    EXPECT_EQ(fig1.k, (std::vector<int>{1, 2, 5}));
    EXPECT_EQ(fig1.ensemble.m, std::vector<int>{20});
    const auto& fig3 = find_preset("fig3").config;
    EXPECT_EQ(fig3.ensemble.nu, (std::vector<double>{3.0, 1.0, 0.5}));
    EXPECT_EQ(fig3.ensemble.m, std::vector<int>{30});
    const auto& fig4 = find_preset("fig4").config;
    EXPECT_EQ(fig4.ensemble.m, (std::vector<int>{21, 42}));
    EXPECT_EQ(fig4.metric, MetricKind::rate);
    EXPECT_EQ(find_preset("fig5").config.params.theta, 1.0);
    const auto& fig6 = find_preset("fig6").config;
    EXPECT_EQ(fig6.ensemble.weights, (std::vector<double>{3.0, 1.0}));
    EXPECT_EQ(fig6.params.bep_c, 0.25);
    EXPECT_EQ(fig6.params.bep_rho, 0.25);
    for (const auto& p : presets())
        EXPECT_EQ(p.config.ensemble.sigma, 2.0) << p.name;
}

TEST(Commands, CdfGoldenHeaders)
{
    const CommandResult r = cmd_cdf(small_cdf_config());
    const std::string csv = render(r, OutputFormat::csv);
    EXPECT_EQ(csv.rfind("# schema=kthmax.cdf.v1\n", 0), 0u);
    EXPECT_EQ(first_data_line(csv), "M,k,z,z_normalized,asymptotic,finite_m,exact,empirical");
    EXPECT_EQ(r.table.rows.size(), 16u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);

    const auto json = nlohmann::ordered_json::parse(render(r, OutputFormat::json));
    EXPECT_EQ(json.begin().key(), "schema");
    EXPECT_EQ(json["schema"], "kthmax.cdf.v1");
    EXPECT_EQ(json["columns"].get<std::vector<std::string>>(),
              (std::vector<std::string>{"M", "k", "z", "z_normalized", "asymptotic", "finite_m", "exact", "empirical"}));
    ASSERT_EQ(json["rows"].size(), 16u);
    EXPECT_EQ(json["rows"][0].begin().key(), "M");
    EXPECT_EQ(json["rows"][0]["M"], 10);
}

TEST(Commands, CdfColumnsFollowMode)
{
    ExperimentConfig c = small_cdf_config();
    c.mode = Mode::finite_m;
    c.exact = false;
    c.mc_n = 0;
    EXPECT_EQ(cmd_cdf(c).table.columns, (std::vector<std::string>{"M", "k", "z", "finite_m"}));
}

TEST(Commands, CdfMonotoneAndDeterministic)
{
    const ExperimentConfig c = small_cdf_config();
    const CommandResult a = cmd_cdf(c);
    for (std::size_t col = 3; col < a.table.columns.size(); ++col) {
        if (a.table.columns[col] == "z_normalized")
            continue;
        for (std::size_t i = 1; i < 8; ++i)
            EXPECT_GE(std::get<double>(a.table.rows[i][col]), std::get<double>(a.table.rows[i - 1][col]))
                << a.table.columns[col];
    }
    EXPECT_EQ(render(a, OutputFormat::csv), render(cmd_cdf(c), OutputFormat::csv));
    EXPECT_EQ(render(a, OutputFormat::json), render(cmd_cdf(c), OutputFormat::json));
}

TEST(Commands, MetricTable)
{
    ExperimentConfig c = parse_config(R"(
ensemble:
  nu: [2, 1, 0.5]
  weights: [1, 1, 1]
  m: [21]
order:
  k: [1, 2]
metric:
  which: rate
mc:
  n: 20000
)");
    const CommandResult r = cmd_metric(c);
    EXPECT_FALSE(r.numerical_failure);
    const std::string csv = render(r, OutputFormat::csv);
    EXPECT_EQ(csv.rfind("# schema=kthmax.metric.v1\n", 0), 0u);
    EXPECT_EQ(first_data_line(csv), "k,M,law,theory,method,mc_estimate,mc_stderr,rel_diff,error");
    ASSERT_EQ(r.table.rows.size(), 2u);
    for (const auto& row : r.table.rows) {
        EXPECT_EQ(std::get<std::string>(row[2]), "finite_m");
        EXPECT_EQ(std::get<std::string>(row[4]), "quadrature");
        EXPECT_LT(std::get<double>(row[7]), 0.02);
    }
}

TEST(Commands, OrderVerdicts)
{
    ExperimentConfig same = parse_config(R"(
ensemble:
  nu: [1.0, 0.5]
  weights: [1, 1]
  m: [20]
ensemble2:
  nu: [1.0, 0.5]
  weights: [1, 1]
  m: [20]
grid:
  auto: false
  min: 0
  max: 60
  count: 61
)");
    const CommandResult r = cmd_order(same);
    const std::string csv = render(r, OutputFormat::csv);
    EXPECT_NE(csv.find("# verdict=second_dominates\n"), std::string::npos);
    EXPECT_EQ(r.table.rows.size(), 61u);

    ExperimentConfig wider = same;
    wider.ensemble2->nu = {1.0, 0.25};
    EXPECT_THROW(cmd_order(wider), DomainError);

    ExperimentConfig missing = same;
    missing.ensemble2.reset();
    EXPECT_THROW(cmd_order(missing), ConfigError);
}

TEST(Output, CsvQuotingAndNulls)
{
    Table t;
    t.schema = "x.v1";
    t.meta = {{"note", std::string("a,b")}};
    t.columns = {"a", "b", "c"};
    t.rows = {{std::string("say \"hi\""), Cell{}, std::numeric_limits<double>::quiet_NaN()}};
    std::ostringstream csv;
    write_table(t, OutputFormat::csv, csv);
    EXPECT_NE(csv.str().find("\"say \"\"hi\"\"\",,"), std::string::npos) << csv.str();
    std::ostringstream json;
    write_table(t, OutputFormat::json, json);
    const auto parsed = nlohmann::ordered_json::parse(json.str());
    EXPECT_TRUE(parsed["rows"][0]["b"].is_null());
    EXPECT_TRUE(parsed["rows"][0]["c"].is_null());
    EXPECT_EQ(parsed["meta"]["note"], "a,b");
}

}  // namespace
