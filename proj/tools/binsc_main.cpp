// Copyright 2026 binsc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "binsc/bench.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int threads_from_environment() {
    const char* raw = std::getenv("BINSC_THREADS");
    if (!raw) return 1;
    try {
        const int threads = std::stoi(raw);
        if (threads < 1) throw std::invalid_argument(raw);
        return threads;
    } catch (const std::exception&) {
        throw binsc::UsageError(
            "BINSC_THREADS must be a positive integer, got '" +
            std::string(raw) + "'");
    }
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string solver;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool out_set = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "key=value experiment config file");
    cmd->add_option("--out", flags.out_dir, "output directory")
        ->each([&flags](const std::string&) { flags.out_set = true; });
    cmd->add_option("--seed", flags.seed, "master seed")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--solver", flags.solver, "sa, spiking, or brute")
        ->check(CLI::IsMember({"sa", "spiking", "brute"}));
}

binsc::ExperimentConfig resolve_config(const CommonFlags& flags) {
    binsc::ExperimentConfig cfg;
    if (!flags.config_path.empty())
        binsc::apply_config_file(cfg, flags.config_path);
    if (flags.seed_set) cfg.master_seed = flags.seed;
    if (flags.out_set) cfg.out_dir = flags.out_dir;
    if (!flags.solver.empty())
        cfg.solvers = {binsc::solver_kind_from_string(flags.solver)};
    cfg.threads = threads_from_environment();
    return cfg;
}

int dispatch(const std::string& command, const CommonFlags& flags) {
    const binsc::ExperimentConfig cfg = resolve_config(flags);

    if (command == "learn") {
        const binsc::LearnReport report = binsc::run_learn(cfg);
        const binsc::EpochRecord& last = report.epochs.back();
        std::cout << "learned dictionary written to " << cfg.out_dir
                  << "/dictionary.txt\n"
                  << "final epoch: mean_error=" << last.mean_error
                  << " mean_activity=" << last.mean_activity
                  << " lambda=" << last.lambda << "\n";
        return kExitOk;
    }
    if (command == "solve") {
        const binsc::RunSummary summary = binsc::run_solve(cfg);
        for (const binsc::SolverSummary& s : summary.solvers)
            std::cout << "solver " << binsc::to_string(s.solver)
                      << ": mean_energy=" << s.mean_energy
                      << " mean_sparsity=" << s.mean_sparsity << " wall="
                      << s.wall_seconds << "s\n";
        std::cout << "outputs in " << cfg.out_dir << "\n";
        return kExitOk;
    }
    if (command == "trace") {
        binsc::run_trace(cfg);
        std::cout << "trace written to " << cfg.out_dir << "/trace.csv\n";
        return kExitOk;
    }
    if (command == "oracle")
        return binsc::run_oracle(cfg, std::cout) ? kExitOk : kExitRuntime;

    throw binsc::UsageError("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary sparse coding of image patches via QUBO sampling"};
    app.require_subcommand(1);

    CommonFlags flags;
    const struct {
        const char* name;
        const char* description;
    } commands[] = {
        {"learn", "train a dictionary on the configured dataset"},
        {"solve", "sample the 16 patch QUBOs of one image and reconstruct it"},
        {"trace", "record spiking energy readouts over time for one patch"},
        {"oracle", "run the exactness / annealing / greedy self-check suites"},
    };
    for (const auto& command : commands)
        add_common_flags(app.add_subcommand(command.name, command.description),
                         flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), flags);
    } catch (const binsc::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
