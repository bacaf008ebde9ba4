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

#ifndef BINSC_DICT_LEARN_HPP
#define BINSC_DICT_LEARN_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "binsc/qubo.hpp"
#include "binsc/samplers.hpp"

namespace binsc {

enum class SolverKind { sa, spiking, brute };

SolverKind solver_kind_from_string(const std::string& name);
std::string to_string(SolverKind kind);

/// Hyperparameters for the unnormalized Hebbian learning loop. sa_reads and
/// sa_sweeps bound the per-sample annealing effort while learning;
/// `spiking` is the template configuration when solver == spiking (its seed
/// is replaced by the per-solve stream).
struct LearnConfig {
    double eta = 0.01;
    double target_sparsity = 0.1875;  // 12 active out of 64
    double initial_lambda = 0.1;
    double lambda_increment = 0.1;
    int epochs = 20;
    SolverKind solver = SolverKind::sa;
    std::uint64_t seed = 0;
    bool shuffle = false;
    int sa_reads = 10;
    int sa_sweeps = 100;
    SpikingConfig spiking;
};

/// Training signals, one row per sample (b x m).
struct TrainingSet {
    Matrix samples;

    Eigen::Index count() const { return samples.rows(); }
    Eigen::Index dim() const { return samples.cols(); }
};

/// Per-epoch convergence record. `lambda` is the penalty in force during
/// the epoch (before any end-of-epoch increment); `column_norms` are the
/// atom norms after the epoch's updates.
struct EpochRecord {
    int epoch = 0;
    double mean_error = 0.0;     // mean of 0.5 * ||x - D a||^2
    double mean_activity = 0.0;  // activity_count / (n * b)
    double lambda = 0.0;
    Vector column_norms;
};

struct LearnReport {
    std::vector<EpochRecord> epochs;
};

/// Maps (instance, solve stream seed) to a binary assignment. Injected by
/// tests and by the contrived lambda-schedule runs; production paths use
/// the LearnConfig solver enum.
using SparseSolver =
    std::function<BinaryState(const QuboInstance&, std::uint64_t seed)>;

/// Random dictionary whose columns are standard-normal draws rescaled to a
/// uniform norm in [norm_low, norm_high]. Deterministic in seed.
Dictionary init_dictionary(Eigen::Index m, Eigen::Index n, double norm_low,
                           double norm_high, std::uint64_t seed);

/// One pass of the sparsity-targeted learning loop: per sample, solve the
/// QUBO at the current lambda, add eta * residual to each active column,
/// and raise lambda by lambda_increment after any epoch whose mean activity
/// fraction exceeds target_sparsity. Lambda never decreases.
std::pair<Dictionary, LearnReport> learn_dictionary(const Dictionary& d,
                                                    const TrainingSet& data,
                                                    const LearnConfig& cfg);

/// Same loop with a caller-supplied solver.
std::pair<Dictionary, LearnReport> learn_dictionary(const Dictionary& d,
                                                    const TrainingSet& data,
                                                    const LearnConfig& cfg,
                                                    const SparseSolver& solve);

/// b samples of the form true_dict * a + N(0, sigma^2) clipped to [0, 1],
/// where a has exactly k_active ones at uniform positions.
TrainingSet synthetic_training_set(const Dictionary& true_dict,
                                   Eigen::Index b, Eigen::Index k_active,
                                   double noise_sigma, std::uint64_t seed);

/// Plain-text dictionary round trip. Header `m <m> n <n>`, then m lines of
/// n space-separated values at 17 significant digits.
void write_dictionary(std::ostream& out, const Dictionary& d);
Dictionary read_dictionary(std::istream& in);
void save_dictionary(const Dictionary& d, const std::string& path);
Dictionary load_dictionary(const std::string& path);

/// Report CSV: epoch,mean_error,mean_activity,lambda,norm_0,...,norm_{n-1}.
void write_report_csv(std::ostream& out, const LearnReport& report);

}  // namespace binsc

#endif  // BINSC_DICT_LEARN_HPP
