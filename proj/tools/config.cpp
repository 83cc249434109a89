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


#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "kthmax/fixture_io.hpp"

namespace kthmax::cli {
namespace {

class Reader {
public:
    explicit Reader(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) const
    {
        std::ostringstream os;
        os << origin_;
        if (node.Mark().line >= 0)
            os << ':' << node.Mark().line + 1 << ':' << node.Mark().column + 1;
        os << ": '" << field << "': " << what;
        throw ConfigError(os.str());
    }

    void check_keys(const YAML::Node& map, const std::string& section, const std::set<std::string>& allowed) const
    {
        if (!map.IsMap())
            fail(map, section, "expected a mapping");
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.contains(key))
                fail(kv.first, section.empty() ? key : section + "." + key, "unknown key");
        }
    }

    template <typename T>
    T scalar(const YAML::Node& node, const std::string& field, const char* expected) const
    {
        if (!node.IsScalar())
            fail(node, field, std::string("expected ") + expected);
        try {
            return node.as<T>();
        } catch (const YAML::Exception&) {
            fail(node, field, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
        }
    }

    double number(const YAML::Node& node, const std::string& field) const
    {
        const auto v = scalar<double>(node, field, "a number");
        if (!std::isfinite(v))
            fail(node, field, "must be finite");
        return v;
    }

    template <typename T>
    std::vector<T> list(const YAML::Node& node, const std::string& field, const char* expected) const
    {
        std::vector<T> out;
        if (node.IsScalar()) {
            out.push_back(scalar<T>(node, field, expected));
        } else if (node.IsSequence()) {
            for (const auto& item : node)
                out.push_back(scalar<T>(item, field, expected));
        } else {
            fail(node, field, std::string("expected ") + expected + " or a list of them");
        }
        if (out.empty())
            fail(node, field, "must not be empty");
        return out;
    }

private:
    std::string origin_;
};

EnsembleSpec read_ensemble(const Reader& in, const YAML::Node& node, const std::string& section)
{
    in.check_keys(node, section, {"nu", "weights", "m", "sigma", "per_link_sigma", "nu_tilde"});
    EnsembleSpec spec;
    if (!node["nu"])
        in.fail(node, section + ".nu", "required");
    spec.nu = in.list<double>(node["nu"], section + ".nu", "a number");
    spec.weights = node["weights"] ? in.list<double>(node["weights"], section + ".weights", "a number")
                                   : std::vector<double>(spec.nu.size(), 1.0);
    if (node["m"])
        spec.m = in.list<int>(node["m"], section + ".m", "an integer");
    if (node["sigma"])
        spec.sigma = in.number(node["sigma"], section + ".sigma");
    if (node["per_link_sigma"])
        spec.per_link_sigma = in.list<double>(node["per_link_sigma"], section + ".per_link_sigma", "a number");
    if (node["nu_tilde"])
        spec.nu_tilde = in.number(node["nu_tilde"], section + ".nu_tilde");

    if (spec.weights.size() != spec.nu.size())
        in.fail(node, section + ".weights", "needs one weight per nu");
    for (double w : spec.weights) {
        if (!(w > 0.0))
            in.fail(node["weights"], section + ".weights", "weights must be positive");
    }
    for (int m : spec.m) {
        if (m < 1)
            in.fail(node["m"], section + ".m", "M must be at least 1");
        try {
            spec.build(m);
        } catch (const std::exception& e) {
            in.fail(node, section, e.what());
        }
    }
    return spec;
}

void emit_list(std::ostream& os, const std::vector<double>& v)
{
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << format_double(v[i]);
    os << ']';
}

void emit_list(std::ostream& os, const std::vector<int>& v)
{
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
    os << ']';
}

void emit_ensemble(std::ostream& os, const char* name, const EnsembleSpec& e)
{
    os << name << ":\n  nu: ";
    emit_list(os, e.nu);
    os << "\n  weights: ";
    emit_list(os, e.weights);
    os << "\n  m: ";
    emit_list(os, e.m);
    os << "\n  sigma: " << format_double(e.sigma) << '\n';
    if (e.per_link_sigma) {
        os << "  per_link_sigma: ";
        emit_list(os, *e.per_link_sigma);
        os << '\n';
    }
    if (e.nu_tilde)
        os << "  nu_tilde: " << format_double(*e.nu_tilde) << '\n';
}

ExperimentConfig base(std::vector<double> nu, std::vector<double> weights, std::vector<int> m, std::vector<int> k)
{
    ExperimentConfig c;
    c.ensemble.nu = std::move(nu);
    c.ensemble.weights = std::move(weights);
    c.ensemble.m = std::move(m);
    c.ensemble.sigma = 2.0;
    c.k = std::move(k);
    return c;
}

}  // namespace

LinkEnsemble EnsembleSpec::build(int m_total) const
{
    if (nu.size() != weights.size())
        throw ConfigError("ensemble: nu and weights differ in length");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<LinkGroup> groups;
    int assigned = 0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double share = m_total * weights[i] / total;
        const double rounded = std::round(share);
        if (std::abs(share - rounded) > 1e-9 || rounded < 1.0) {
            std::ostringstream os;
            os << "M=" << m_total << " does not split into a whole, non-zero number of links for nu="
               << format_double(nu[i]) << " (share " << share << ")";
            throw ConfigError(os.str());
        }
        groups.push_back({nu[i], static_cast<int>(rounded)});
        assigned += static_cast<int>(rounded);
    }
    if (assigned != m_total)
        throw ConfigError("ensemble: group counts do not add up to M");
    if (per_link_sigma && static_cast<int>(per_link_sigma->size()) != m_total)
        throw ConfigError("ensemble: per_link_sigma needs exactly M entries");
    return LinkEnsemble(groups, sigma, per_link_sigma);
}

const char* to_string(Mode m)
{
    switch (m) {
    case Mode::asymptotic: return "asymptotic";
    case Mode::finite_m: return "finite_m";
    case Mode::both: return "both";
    case Mode::automatic: return "auto";
    }
    return "?";
}

const char* to_string(MetricKind m)
{
    switch (m) {
    case MetricKind::outage: return "outage";
    case MetricKind::rate: return "rate";
    case MetricKind::eff_rate: return "eff_rate";
    case MetricKind::bep: return "bep";
    }
    return "?";
}

Mode parse_mode(const std::string& text)
{
    for (Mode m : {Mode::asymptotic, Mode::finite_m, Mode::both, Mode::automatic}) {
        if (text == to_string(m))
            return m;
    }
    throw ConfigError("mode must be one of asymptotic, finite_m, both, auto (got '" + text + "')");
}

OutputFormat parse_format(const std::string& text)
{
    if (text == "csv")
        return OutputFormat::csv;
    if (text == "json")
        return OutputFormat::json;
    throw ConfigError("format must be csv or json (got '" + text + "')");
}

MetricKind parse_metric(const std::string& text)
{
    for (MetricKind m : {MetricKind::outage, MetricKind::rate, MetricKind::eff_rate, MetricKind::bep}) {
        if (text == to_string(m))
            return m;
    }
    throw ConfigError("metric must be one of outage, rate, eff_rate, bep (got '" + text + "')");
}

void ExperimentConfig::validate() const
{
    if (k.empty())
        throw ConfigError("order.k: at least one rank required");
    for (int kk : k) {
        if (kk < 1)
            throw ConfigError("order.k: ranks must be at least 1");
        for (int m : ensemble.m) {
            if (kk > m)
                throw ConfigError("order.k: rank " + std::to_string(kk) + " exceeds M=" + std::to_string(m));
        }
    }
    if (!grid.automatic && !(grid.min < grid.max && grid.count >= 2))
        throw ConfigError("grid: need min < max and count >= 2");
    if (grid.count < 2)
        throw ConfigError("grid.count: at least 2 points");
    if (mc_n < 0 || (mc_n > 0 && mc_n < 100))
        throw ConfigError("mc.n: must be 0 (no simulation) or at least 100");
    if (ensemble.per_link_sigma && ensemble.m.size() != 1)
        throw ConfigError("ensemble.per_link_sigma: only valid with a single M");
    try {
        params.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("metric: ") + e.what());
    }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(origin + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                          ": " + e.msg);
    }
    const Reader in(origin);
    ExperimentConfig c;
    if (root.IsNull())
        return c;
    in.check_keys(root, "", {"ensemble", "ensemble2", "order", "metric", "grid", "run", "mc", "output"});

    if (root["ensemble"])
        c.ensemble = read_ensemble(in, root["ensemble"], "ensemble");
    if (root["ensemble2"])
        c.ensemble2 = read_ensemble(in, root["ensemble2"], "ensemble2");
    if (const auto n = root["order"]) {
        in.check_keys(n, "order", {"k"});
        if (n["k"])
            c.k = in.list<int>(n["k"], "order.k", "an integer");
    }
    if (const auto n = root["metric"]) {
        in.check_keys(n, "metric", {"which", "gamma_s", "z_th", "theta", "bep_c", "bep_rho"});
        if (n["which"]) {
            try {
                c.metric = parse_metric(in.scalar<std::string>(n["which"], "metric.which", "a metric name"));
            } catch (const ConfigError& e) {
                in.fail(n["which"], "metric.which", e.what());
            }
        }
        const std::pair<const char*, double*> fields[] = {{"gamma_s", &c.params.gamma_s},
                                                          {"z_th", &c.params.z_th},
                                                          {"theta", &c.params.theta},
                                                          {"bep_c", &c.params.bep_c},
                                                          {"bep_rho", &c.params.bep_rho}};
        for (const auto& [key, target] : fields) {
            if (n[key])
                *target = in.number(n[key], std::string("metric.") + key);
        }
    }
    if (const auto n = root["grid"]) {
        in.check_keys(n, "grid", {"auto", "min", "max", "count"});
        if (n["auto"])
            c.grid.automatic = in.scalar<bool>(n["auto"], "grid.auto", "true or false");
        if (n["min"])
            c.grid.min = in.number(n["min"], "grid.min");
        if (n["max"])
            c.grid.max = in.number(n["max"], "grid.max");
        if (n["count"])
            c.grid.count = in.scalar<int>(n["count"], "grid.count", "an integer");
        if (!n["auto"] && (n["min"] || n["max"]))
            c.grid.automatic = false;
    }
    if (const auto n = root["run"]) {
        in.check_keys(n, "run", {"mode", "exact"});
        if (n["mode"]) {
            try {
                c.mode = parse_mode(in.scalar<std::string>(n["mode"], "run.mode", "a mode name"));
            } catch (const ConfigError& e) {
                in.fail(n["mode"], "run.mode", e.what());
            }
        }
        if (n["exact"])
            c.exact = in.scalar<bool>(n["exact"], "run.exact", "true or false");
    }
    if (const auto n = root["mc"]) {
        in.check_keys(n, "mc", {"n", "seed"});
        if (n["n"])
            c.mc_n = in.scalar<std::int64_t>(n["n"], "mc.n", "an integer");
        if (n["seed"])
            c.seed = in.scalar<std::uint64_t>(n["seed"], "mc.seed", "an unsigned 64-bit integer");
    }
    if (const auto n = root["output"]) {
        in.check_keys(n, "output", {"path", "format"});
        if (n["path"])
            c.out_path = in.scalar<std::string>(n["path"], "output.path", "a path");
        if (n["format"]) {
            try {
                c.format = parse_format(in.scalar<std::string>(n["format"], "output.format", "csv or json"));
            } catch (const ConfigError& e) {
                in.fail(n["format"], "output.format", e.what());
            }
        }
    }
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream text;
    text << is.rdbuf();
    return parse_config(text.str(), path);
}

std::string dump_config(const ExperimentConfig& c)
{
    std::ostringstream os;
    emit_ensemble(os, "ensemble", c.ensemble);
    if (c.ensemble2)
        emit_ensemble(os, "ensemble2", *c.ensemble2);
    os << "order:\n  k: ";
    emit_list(os, c.k);
    os << "\nmetric:\n  which: " << to_string(c.metric) << "\n  gamma_s: " << format_double(c.params.gamma_s)
       << "\n  z_th: " << format_double(c.params.z_th) << "\n  theta: " << format_double(c.params.theta)
       << "\n  bep_c: " << format_double(c.params.bep_c) << "\n  bep_rho: " << format_double(c.params.bep_rho)
       << "\ngrid:\n  auto: " << (c.grid.automatic ? "true" : "false");
    if (!c.grid.automatic)
        os << "\n  min: " << format_double(c.grid.min) << "\n  max: " << format_double(c.grid.max);
    os << "\n  count: " << c.grid.count << "\nrun:\n  mode: " << to_string(c.mode)
       << "\n  exact: " << (c.exact ? "true" : "false") << "\nmc:\n  n: " << c.mc_n << "\n  seed: " << c.seed
       << "\noutput:\n  path: \"" << c.out_path << "\"\n  format: " << (c.format == OutputFormat::csv ? "csv" : "json")
       << '\n';
    return os.str();
}

const std::vector<FigurePreset>& presets()
{
    static const std::vector<FigurePreset> list = [] {
        std::vector<FigurePreset> v;

        auto fig1 = base({1.0}, {1.0}, {20}, {1, 2, 5});
        fig1.mode = Mode::asymptotic;
        v.push_back({"fig1", "CDF, i.i.d. nu=1, sigma=2, M=20, k in {1,2,5}", fig1});

        auto fig2 = base({1.0, 0.5}, {1.0, 1.0}, {20}, {1, 2, 5});
        fig2.mode = Mode::asymptotic;
        v.push_back({"fig2", "CDF, nu=1 on the first half and 0.5 on the second, M=20", fig2});

        auto fig3 = base({3.0, 1.0, 0.5}, {1.0, 1.0, 1.0}, {30}, {1, 2, 5});
        fig3.mode = Mode::both;
        v.push_back({"fig3", "CDF in SNR units, thirds nu in {3,1,0.5}, M=30", fig3});

        auto fig4 = base({2.0, 1.0, 0.5}, {1.0, 1.0, 1.0}, {21, 42}, {1, 2, 3, 4, 5});
        fig4.metric = MetricKind::rate;
        fig4.mc_n = 1'000'000;
        v.push_back({"fig4", "average throughput, thirds nu in {2,1,0.5}, M in {21,42} (divisible by 3)", fig4});

        auto fig5 = fig4;
        fig5.metric = MetricKind::eff_rate;
        fig5.params.theta = 1.0;
        v.push_back({"fig5", "effective throughput at theta=1, fig4 ensemble", fig5});

        auto fig6 = base({1.0, 0.5}, {3.0, 1.0}, {20}, {1, 2, 3, 4, 5});
        fig6.metric = MetricKind::bep;
        fig6.params.bep_c = 0.25;
        fig6.params.bep_rho = 0.25;
        fig6.mode = Mode::both;
        fig6.mc_n = 1'000'000;
        v.push_back({"fig6", "average BEP, C=rho=0.25, nu=1 on 3M/4 and 0.5 on M/4, M=20", fig6});
        return v;
    }();
    return list;
}

const FigurePreset& find_preset(const std::string& name)
{
    for (const auto& p : presets()) {
        if (p.name == name)
            return p;
    }
    throw ConfigError("unknown preset '" + name + "' (try 'kthmax preset list')");
}

}  // namespace kthmax::cli
