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


#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include "kthmax/evt.hpp"
#include "kthmax/fixture_io.hpp"
#include "kthmax/law.hpp"
#include "kthmax/metrics.hpp"
#include "kthmax/oracle.hpp"

namespace kthmax::cli {
namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c)
{
    if (const auto* i = std::get_if<std::int64_t>(&c))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c))
        return format_double(*d);
    if (const auto* s = std::get_if<std::string>(&c))
        return *s;
    return "";
}

nlohmann::json cell_json(const Cell& c)
{
    if (const auto* i = std::get_if<std::int64_t>(&c))
        return *i;
    if (const auto* d = std::get_if<double>(&c))
        return std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(nullptr);
    if (const auto* s = std::get_if<std::string>(&c))
        return *s;
    return nullptr;
}

Cell num(double v) { return v; }
Cell integer(long long v) { return static_cast<std::int64_t>(v); }

struct LawChoice {
    bool asymptotic = false;
    bool finite_m = false;
};

LawChoice choose_laws(Mode mode, const LinkEnsemble& ensemble)
{
    switch (mode) {
    case Mode::asymptotic: return {true, false};
    case Mode::finite_m: return {false, true};
    case Mode::both: return {true, true};
    case Mode::automatic: {
        const auto routed = routed_law(ensemble, OrderSelector(1));
        const bool asym = std::holds_alternative<AsymptoticLaw>(routed);
        return {asym, !asym};
    }
    }
    return {};
}

NormConstants constants_for(const EnsembleSpec& spec, const LinkEnsemble& ensemble)
{
    return norm_constants(ensemble, spec.nu_tilde);
}

std::vector<std::vector<EmpiricalCdf>> draw_samples(const ExperimentConfig& config)
{
    std::vector<std::vector<EmpiricalCdf>> out;
    if (config.mc_n == 0)
        return out;
    for (int m : config.ensemble.m)
        out.push_back(sample_order_statistics(config.ensemble.build(m), config.k, config.mc_n, config.seed));
    return out;
}

void add_run_meta(Table& t, const ExperimentConfig& config)
{
    t.meta.emplace_back("mode", std::string(to_string(config.mode)));
    t.meta.emplace_back("seed", std::to_string(config.seed));
    t.meta.emplace_back("mc_n", integer(config.mc_n));
}

std::string fixed4(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

void write_table(const Table& table, OutputFormat format, std::ostream& os)
{
    if (format == OutputFormat::csv) {
        os << "# schema=" << table.schema << '\n';
        for (const auto& [key, value] : table.meta)
            os << "# " << key << '=' << cell_text(value) << '\n';
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            os << (i ? "," : "") << csv_field(table.columns[i]);
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << csv_field(cell_text(row[i]));
            os << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["schema"] = table.schema;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta)
        doc["meta"][key] = cell_json(value);
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            r[table.columns[i]] = cell_json(row[i]);
        doc["rows"].push_back(std::move(r));
    }
    os << doc.dump(2) << '\n';
}

CommandResult cmd_cdf(const ExperimentConfig& config)
{
    config.validate();
    CommandResult result;
    Table& t = result.table;
    t.schema = "kthmax.cdf.v1";
    add_run_meta(t, config);

    LawChoice any;
    for (int m : config.ensemble.m) {
        const auto c = choose_laws(config.mode, config.ensemble.build(m));
        any.asymptotic = any.asymptotic || c.asymptotic;
        any.finite_m = any.finite_m || c.finite_m;
    }
    const bool empirical = config.mc_n > 0;
    t.columns = {"M", "k", "z"};
    if (any.asymptotic)
        t.columns.insert(t.columns.end(), {"z_normalized", "asymptotic"});
    if (any.finite_m)
        t.columns.push_back("finite_m");
    if (config.exact)
        t.columns.push_back("exact");
    if (empirical)
        t.columns.push_back("empirical");

    const auto samples = draw_samples(config);
    for (std::size_t mi = 0; mi < config.ensemble.m.size(); ++mi) {
        const int m = config.ensemble.m[mi];
        const LinkEnsemble ensemble = config.ensemble.build(m);
        const LawChoice use = choose_laws(config.mode, ensemble);
        std::optional<NormConstants> consts;
        if (use.asymptotic)
            consts = constants_for(config.ensemble, ensemble);
        for (std::size_t ki = 0; ki < config.k.size(); ++ki) {
            const OrderSelector k(config.k[ki]);
            const Law grid_law = use.finite_m ? Law{FiniteMLaw{ensemble, k}} : Law{AsymptoticLaw{*consts, k}};
            const Eigen::ArrayXd grid = config.grid.automatic
                                            ? default_grid(grid_law, config.grid.count)
                                            : Eigen::ArrayXd::LinSpaced(config.grid.count, config.grid.min, config.grid.max);
            const auto exact = [&](double z) { return z > 0.0 ? exact_kth_max_cdf(ensemble, k, z) : 0.0; };
            for (double z : grid) {
                std::vector<Cell> row{integer(m), integer(k.k()), num(z)};
                if (any.asymptotic) {
                    if (consts) {
                        row.push_back(num((z - consts->b_m) / consts->a_m));
                        row.push_back(num(unnormalized_kth_max_cdf_asym(*consts, k, z)));
                    } else {
                        row.insert(row.end(), {Cell{}, Cell{}});
                    }
                }
                if (any.finite_m)
                    row.push_back(use.finite_m ? num(law_cdf(FiniteMLaw{ensemble, k}, z)) : Cell{});
                if (config.exact)
                    row.push_back(num(exact(z)));
                if (empirical)
                    row.push_back(num(samples[mi][ki].cdf(z)));
                t.rows.push_back(std::move(row));
            }
            if (empirical) {
                const auto& s = samples[mi][ki];
                std::string line = "ks M=" + std::to_string(m) + " k=" + std::to_string(k.k());
                const auto report = [&](const std::string& name, const std::function<double(double)>& f) {
                    const double ks = ks_distance(s, f);
                    line += " " + name + "=" + fixed4(ks);
                    t.meta.emplace_back("ks_" + name + "_M" + std::to_string(m) + "_k" + std::to_string(k.k()), num(ks));
                };
                if (use.asymptotic)
                    report("asymptotic", [&](double z) { return unnormalized_kth_max_cdf_asym(*consts, k, z); });
                if (use.finite_m)
                    report("finite_m", [&](double z) { return law_cdf(FiniteMLaw{ensemble, k}, z); });
                if (config.exact)
                    report("exact", exact);
                result.summary.push_back(line);
            }
        }
    }
    return result;
}

CommandResult cmd_metric(const ExperimentConfig& config)
{
    config.validate();
    if (config.mc_n > 0 && config.mc_n < 100)
        throw ConfigError("mc.n: metric estimates need at least 100 samples (or 0 to disable)");
    CommandResult result;
    Table& t = result.table;
    t.schema = "kthmax.metric.v1";
    t.meta.emplace_back("metric", std::string(to_string(config.metric)));
    add_run_meta(t, config);
    t.columns = {"k", "M", "law", "theory", "method", "mc_estimate", "mc_stderr", "rel_diff", "error"};

    const MetricParams& params = config.params;
    const auto samples = draw_samples(config);
    const MonteCarloMetric which = [&] {
        switch (config.metric) {
        case MetricKind::outage: return MonteCarloMetric::outage;
        case MetricKind::rate: return MonteCarloMetric::avg_rate;
        case MetricKind::eff_rate: return MonteCarloMetric::eff_rate;
        case MetricKind::bep: return MonteCarloMetric::bep;
        }
        return MonteCarloMetric::avg_rate;
    }();

    for (std::size_t mi = 0; mi < config.ensemble.m.size(); ++mi) {
        const int m = config.ensemble.m[mi];
        const LinkEnsemble ensemble = config.ensemble.build(m);
        const LawChoice use = choose_laws(config.mode, ensemble);
        for (std::size_t ki = 0; ki < config.k.size(); ++ki) {
            const OrderSelector k(config.k[ki]);
            std::vector<Law> laws;
            if (use.asymptotic)
                laws.push_back(AsymptoticLaw{constants_for(config.ensemble, ensemble), k});
            if (use.finite_m)
                laws.push_back(FiniteMLaw{ensemble, k});
            std::optional<MonteCarloEstimate> mc;
            if (!samples.empty())
                mc = mc_metric(samples[mi][ki], params, which);
            for (const Law& law : laws) {
                std::vector<Cell> row{integer(k.k()), integer(m), law_name(law)};
                try {
                    MetricValue v{0.0, MetricMethod::closed_form};
                    switch (config.metric) {
                    case MetricKind::outage: v = {outage_probability(law, params), MetricMethod::closed_form}; break;
                    case MetricKind::rate: v = avg_throughput(law, params); break;
                    case MetricKind::eff_rate: v = {effective_throughput(law, params), MetricMethod::quadrature}; break;
                    case MetricKind::bep: v = avg_bep(law, params); break;
                    }
                    row.push_back(num(v.value));
                    row.push_back(std::string(to_string(v.method)));
                    if (mc) {
                        row.insert(row.end(), {num(mc->estimate), num(mc->std_error),
                                               num(std::abs(v.value - mc->estimate) / std::abs(mc->estimate))});
                    } else {
                        row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
                    }
                    row.push_back(std::string());
                } catch (const DomainError&) {
                    throw;
                } catch (const std::runtime_error& e) {
                    result.numerical_failure = true;
                    row.insert(row.end(), {Cell{}, std::string("error")});
                    if (mc)
                        row.insert(row.end(), {num(mc->estimate), num(mc->std_error), Cell{}});
                    else
                        row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
                    row.push_back(std::string(e.what()));
                }
                t.rows.push_back(std::move(row));
            }
        }
    }
    return result;
}

CommandResult cmd_order(const ExperimentConfig& config)
{
    config.validate();
    if (!config.ensemble2)
        throw ConfigError("order: an 'ensemble2' section is required");
    if (config.ensemble.m.size() != 1 || config.ensemble2->m.size() != 1)
        throw ConfigError("order: each ensemble needs exactly one M");
    const OrderSelector k(config.k.front());
    const LinkEnsemble first = config.ensemble.build(config.ensemble.m.front());
    const LinkEnsemble second = config.ensemble2->build(config.ensemble2->m.front());
    k.check_against(second.size());
    const NormConstants c1 = constants_for(config.ensemble, first);
    const NormConstants c2 = constants_for(*config.ensemble2, second);

    Eigen::ArrayXd grid;
    if (config.grid.automatic) {
        const Law l1 = AsymptoticLaw{c1, k};
        const Law l2 = AsymptoticLaw{c2, k};
        grid = Eigen::ArrayXd::LinSpaced(config.grid.count, std::min(law_quantile(l1, 1e-3), law_quantile(l2, 1e-3)),
                                         std::max(law_quantile(l1, 1.0 - 1e-3), law_quantile(l2, 1.0 - 1e-3)));
    } else {
        grid = Eigen::ArrayXd::LinSpaced(config.grid.count, config.grid.min, config.grid.max);
    }
    const OrderReport report = stochastic_order_check(c1, c2, grid, k);

    CommandResult result;
    Table& t = result.table;
    t.schema = "kthmax.order.v1";
    t.meta.emplace_back("verdict", std::string(to_string(report.verdict)));
    t.meta.emplace_back("sign_change_index",
                        report.sign_change_index ? integer(*report.sign_change_index) : Cell{std::string("none")});
    t.meta.emplace_back("k", integer(k.k()));
    t.meta.emplace_back("p", num(c1.p));
    t.meta.emplace_back("a_first", num(c1.a_m));
    t.meta.emplace_back("b_first", num(c1.b_m));
    t.meta.emplace_back("a_second", num(c2.a_m));
    t.meta.emplace_back("b_second", num(c2.b_m));
    t.columns = {"index", "z", "condition", "cdf_first", "cdf_second"};
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        t.rows.push_back({integer(i), num(grid[i]), num(report.condition[i]),
                          num(unnormalized_kth_max_cdf_asym(c1, k, grid[i])),
                          num(unnormalized_kth_max_cdf_asym(c2, k, grid[i]))});
    }
    std::string line = std::string("verdict ") + to_string(report.verdict);
    if (report.sign_change_index)
        line += " (sign change at index " + std::to_string(*report.sign_change_index) + ", z=" +
                format_double(grid[*report.sign_change_index]) + ")";
    result.summary.push_back(line);
    return result;
}

}  // namespace kthmax::cli
