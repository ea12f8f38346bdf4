// SPDX-License-Identifier: Apache-2.0
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

// nomactl: outage sweeps, validation grids and NOMA gains from JSON configs.
//
// Exit status: 0 success, 2 bad config or arguments, 3 validation tolerance
// exceeded, 4 a series or quadrature failed to converge.

#include "noma/config.hpp"
#include "noma/errors.hpp"
#include "noma/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kTolerance = 3;
constexpr int kConvergence = 4;

struct Options {
    std::string config;
    std::string out;
    std::optional<std::string> engine;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON scenario file")->required();
    cmd->add_option("--out", o.out, "output CSV (stdout if omitted)");
    cmd->add_option("--engine", o.engine, "analytic, mc or both")
        ->check(CLI::IsMember({"analytic", "mc", "both"}));
    cmd->add_option("--samples", o.samples, "Monte-Carlo samples per point")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
}

noma::cli::Config load(const Options& o) {
    noma::cli::Config c = noma::cli::load_config(o.config);
    if (o.engine) c.engine = noma::cli::parse_engine(*o.engine);
    if (o.samples) c.mc.n_samples = *o.samples;
    if (o.seed) c.mc.base_seed = *o.seed;
    if (o.workers) {
        c.mc.n_workers = *o.workers;
        c.quad.n_workers = *o.workers;
    }
    return c;
}

template <class Rows>
void emit(const Options& o, const Rows& rows) {
    if (o.out.empty()) {
        noma::cli::write_csv(std::cout, rows);
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw noma::cli::ConfigError("cannot write '" + o.out + "'");
    noma::cli::write_csv(f, rows);
}

int cmd_validate(const Options& o) {
    const auto cfg = load(o);
    const auto rows = noma::cli::run_validate(cfg);
    emit(o, rows);
    int failed = 0;
    for (const auto& r : rows) {
        if (r.pass) continue;
        ++failed;
        std::cerr << "tolerance exceeded at alpha1=" << r.alpha1 << " alpha2=" << r.alpha2
                  << ": analytic=" << r.analytic_p << " mc=" << r.mc_p << " se=" << r.mc_se
                  << " diff=" << r.abs_diff << '\n';
    }
    if (failed) {
        std::cerr << failed << " of " << rows.size() << " grid points failed\n";
        return kTolerance;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-user NOMA/OMA outage probabilities for terrestrial and UAV base stations"};
    app.require_subcommand(1);
    Options opt;
    auto* validate = app.add_subcommand("validate", "compare the uplink series with Monte Carlo");
    auto* sweep = app.add_subcommand("sweep", "outage and NOMA gain over a parameter range");
    auto* gain = app.add_subcommand("gain", "outage and NOMA gain at the scenario operating point");
    for (auto* c : {validate, sweep, gain}) add_common(c, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        const auto cfg = load(opt);
        if (sweep->parsed()) {
            if (!cfg.sweep) throw noma::cli::ConfigError("sweep: section missing");
            emit(opt, noma::cli::run_sweep(cfg));
        } else {
            emit(opt, noma::cli::run_gain(cfg));
        }
        return kOk;
    } catch (const noma::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const noma::ContractError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const noma::TruncationError& e) {
        std::cerr << "no convergence: " << e.what() << " (bound " << e.bound() << ")\n";
        return kConvergence;
    } catch (const noma::QuadratureError& e) {
        std::cerr << "no convergence: " << e.what() << " (residual " << e.residual() << ")\n";
        return kConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
