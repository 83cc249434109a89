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


#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "kthmax/acceptance.hpp"
#include "kthmax/fixture_io.hpp"
#include "kthmax/specfun.hpp"

namespace {

using namespace kthmax;
using namespace kthmax::cli;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitSelftest = 3;

struct RunFlags {
    std::string config;
    std::string preset;
    std::string mode;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
    bool quick = false;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* samples_opt = nullptr;
};

void add_run_flags(CLI::App* sub, RunFlags& f)
{
    sub->add_option("--config", f.config, "YAML experiment configuration");
    sub->add_option("--preset", f.preset, "figure preset (see 'preset list')");
    f.seed_opt = sub->add_option("--seed", f.seed, "Monte Carlo seed");
    f.samples_opt = sub->add_option("--samples", f.samples, "Monte Carlo trials (0 disables simulation)");
    sub->add_option("--mode", f.mode, "asymptotic, finite_m, both or auto");
    sub->add_option("--out", f.out, "output path, '-' for stdout");
    sub->add_option("--format", f.format, "csv or json");
    sub->add_flag("--quick", f.quick, "cap simulation at 10^4 trials");
}

ExperimentConfig resolve(const RunFlags& f)
{
    if (!f.config.empty() && !f.preset.empty())
        throw ConfigError("give either --config or --preset, not both");
    ExperimentConfig c;
    if (!f.config.empty())
        c = load_config(f.config);
    else if (!f.preset.empty())
        c = find_preset(f.preset).config;
    else
        throw ConfigError("missing --config or --preset");
    if (f.seed_opt->count() > 0)
        c.seed = f.seed;
    if (f.samples_opt->count() > 0)
        c.mc_n = f.samples;
    if (!f.mode.empty())
        c.mode = parse_mode(f.mode);
    if (!f.out.empty())
        c.out_path = f.out;
    if (!f.format.empty())
        c.format = parse_format(f.format);
    if (f.quick)
        c.mc_n = std::min<std::int64_t>(c.mc_n, 10'000);
    c.validate();
    return c;
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& body)
{
    if (path.empty() || path == "-") {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw ConfigError("cannot open '" + path + "' for writing");
    body(os);
    if (!os)
        throw std::runtime_error("failed writing '" + path + "'");
}

int run_table(const RunFlags& flags, CommandResult (*command)(const ExperimentConfig&))
{
    const ExperimentConfig config = resolve(flags);
    const CommandResult result = command(config);
    emit(config.out_path, [&](std::ostream& os) { write_table(result.table, config.format, os); });
    for (const auto& line : result.summary)
        std::cerr << line << '\n';
    return result.numerical_failure ? kExitNumerical : kExitOk;
}

int run_selftest(bool quick, std::uint64_t seed, const std::string& fixture_dir)
{
    AcceptanceOptions opts;
    opts.quick = quick;
    opts.seed = seed;
    opts.fixture_dir = fixture_dir;
    int passed = 0;
    const auto results = run_acceptance(opts, [&](const CriterionResult& r) {
        std::cout << format_result(r) << std::endl;
        passed += r.passed ? 1 : 0;
    });
    std::cout << passed << '/' << results.size() << " criteria passed\n";
    return passed == static_cast<int>(results.size()) ? kExitOk : kExitSelftest;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"k-th maximum order statistics of Rician links: theory, simulation and metrics"};
    app.require_subcommand(1);

    RunFlags cdf_flags;
    RunFlags metric_flags;
    RunFlags order_flags;
    auto* cdf = app.add_subcommand("cdf", "CDF table of the k-th strongest link");
    add_run_flags(cdf, cdf_flags);
    auto* metric = app.add_subcommand("metric", "outage, throughput, effective throughput or BEP");
    add_run_flags(metric, metric_flags);
    auto* order = app.add_subcommand("order", "stochastic ordering between 'ensemble' and 'ensemble2'");
    add_run_flags(order, order_flags);

    bool self_quick = false;
    std::uint64_t self_seed = kAcceptanceSeed;
#ifdef KTHMAX_FIXTURE_DIR
    std::string fixture_dir = KTHMAX_FIXTURE_DIR;
#else
    std::string fixture_dir;
#endif
    auto* selftest = app.add_subcommand("selftest", "seed-pinned acceptance suite");
    selftest->add_flag("--quick", self_quick, "10^4 trials per simulation");
    selftest->add_option("--seed", self_seed, "base seed");
    selftest->add_option("--fixture-dir", fixture_dir, "directory with the pinned sampler fixture ('' skips it)");

    auto* preset = app.add_subcommand("preset", "figure presets");
    preset->require_subcommand(1);
    preset->add_subcommand("list", "list preset names");
    std::string dump_name;
    std::string dump_out;
    auto* dump = preset->add_subcommand("dump", "print a preset as a config file");
    dump->add_option("name", dump_name, "preset name")->required();
    dump->add_option("--out", dump_out, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (cdf->parsed())
            return run_table(cdf_flags, cmd_cdf);
        if (metric->parsed())
            return run_table(metric_flags, cmd_metric);
        if (order->parsed())
            return run_table(order_flags, cmd_order);
        if (selftest->parsed())
            return run_selftest(self_quick, self_seed, fixture_dir);
        if (dump->parsed()) {
            const auto& p = find_preset(dump_name);
            emit(dump_out, [&](std::ostream& os) { os << "# " << p.name << ": " << p.summary << '\n' << dump_config(p.config); });
            return kExitOk;
        }
        for (const auto& p : presets())
            std::cout << p.name << "  " << p.summary << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const FixtureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
