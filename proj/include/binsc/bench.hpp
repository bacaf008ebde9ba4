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

#ifndef BINSC_BENCH_HPP
#define BINSC_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "binsc/dict_learn.hpp"
#include "binsc/imaging.hpp"
#include "binsc/qubo.hpp"
#include "binsc/samplers.hpp"

namespace binsc {

/// Bad arguments or missing inputs; the CLI maps this to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Experiment settings shared by the learn/solve/trace/oracle commands.
/// Populated from a flat key=value config file plus flag overrides; see
/// parse_config_file for the key list. Defaults follow the benchmark
/// protocol: 1000 annealing reads per QUBO and a 4 x 5 x 100 spiking sweep
/// (2000 samples per QUBO).
struct ExperimentConfig {
    std::string dataset = "synthetic";  // "synthetic" or an IDX3 path
    std::string dictionary;             // path; empty when learning fresh
    std::string out_dir = "out";
    std::uint64_t master_seed = 1;
    int threads = 1;  // from the BINSC_THREADS environment variable only

    std::vector<SolverKind> solvers = {SolverKind::sa, SolverKind::spiking};

    // simulated annealing protocol
    int sa_reads = 1000;
    int sa_sweeps = 1000;

    // spiking sweep grid
    std::vector<int> spiking_sim_steps = {5000, 10000, 15000, 20000};
    std::vector<double> spiking_scalings = {10, 100, 1000, 10000, 100000};
    int spiking_seeds_per_cell = 100;
    SpikingConfig spiking_base;  // mantissa/exponent/window knobs

    // learning parameters
    Eigen::Index learn_m = 49;
    Eigen::Index learn_n = 64;
    int learn_epochs = 20;
    double learn_eta = 0.01;
    double learn_target_sparsity = 0.1875;
    double learn_lambda0 = 0.1;
    double learn_lambda_increment = 0.1;
    int learn_sa_reads = 10;
    int learn_sa_sweeps = 100;
    int learn_images = 64;  // IDX images used for training (16 patches each)
    double init_norm_low = 0.01;
    double init_norm_high = 0.2;

    // synthetic data parameters
    Eigen::Index synthetic_b = 200;
    Eigen::Index synthetic_k_active = 3;
    double synthetic_noise_sigma = 0.01;
    int synthetic_images = 8;

    // solve / trace targets
    int image_index = 0;
    int patch_index = 0;
    double solve_lambda = 1.4;  // end point of the training schedule
    bool dump_instances = true;  // write qubo_patch<NN>.txt next to results
    std::string instance;  // solve/trace a dumped instance file instead

    // oracle suite sizing
    int oracle_n = 16;
    int oracle_instances = 20;

    int total_spiking_samples_per_qubo() const {
        return static_cast<int>(spiking_sim_steps.size() *
                                spiking_scalings.size()) *
               spiking_seeds_per_cell;
    }
};

/// Reads a flat key=value file (one pair per line, `#` comments, list
/// values comma separated) into `cfg`. Unknown keys raise UsageError.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);

/// Per-solver outcome of solving the sixteen patch QUBOs of one image.
struct SolverSummary {
    SolverKind solver = SolverKind::sa;
    std::vector<double> best_energy;  // one entry per patch
    std::vector<int> best_sparsity;
    std::vector<BinaryState> best_state;
    double mean_energy = 0.0;
    double mean_sparsity = 0.0;
    double wall_seconds = 0.0;  // reported on stdout, not in the CSV
};

struct RunSummary {
    std::vector<SolverSummary> solvers;
};

/// Deterministic synthetic 28x28 images assembled from patches of a hidden
/// 49 x 64 dictionary; the stand-in dataset when no IDX file is given.
ImageSet synthetic_images(int count, std::uint64_t seed);

/// learn: trains a dictionary on the configured dataset and writes
/// <out>/dictionary.txt and <out>/learn_report.csv.
LearnReport run_learn(const ExperimentConfig& cfg);

/// solve: builds the 16 patch QUBOs of image `cfg.image_index`, samples
/// each with every configured solver (patch seed = master_seed +
/// 1000 * patch_index), and writes per-patch sample CSVs, per-solver
/// reconstruction PGMs, the original PGM, and <out>/summary.csv.
RunSummary run_solve(const ExperimentConfig& cfg);

/// trace: runs the spiking sweep on one patch QUBO and writes
/// <out>/trace.csv with columns
/// sim_steps,weight_scaling,seed_index,readout_step,energy.
void run_trace(const ExperimentConfig& cfg);

/// oracle: exactness, annealing-vs-brute-force, and greedy-bound suites on
/// seeded instances; prints one line per suite and returns overall success.
bool run_oracle(const ExperimentConfig& cfg, std::ostream& out);

/// summary.csv round trip helpers (columns
/// solver,patch,best_energy,best_sparsity with a trailing `mean` row per
/// solver).
void write_summary_csv(std::ostream& out, const RunSummary& summary);

/// Random sparse-coding problem for the oracle and test suites: a
/// dictionary of standard-normal atoms scaled to unit norm and a signal
/// built from a few of them plus noise.
struct SparseCodingProblem {
    Matrix atoms;
    Vector x;
    double lambda = 0.0;
};

SparseCodingProblem random_sparse_coding_problem(Eigen::Index m,
                                                 Eigen::Index n, double lambda,
                                                 std::uint64_t seed);

/// build_qubo applied to random_sparse_coding_problem.
QuboInstance random_sparse_coding_instance(Eigen::Index m, Eigen::Index n,
                                           double lambda, std::uint64_t seed);

}  // namespace binsc

#endif  // BINSC_BENCH_HPP
