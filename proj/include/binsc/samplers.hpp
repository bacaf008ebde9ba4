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

#ifndef BINSC_SAMPLERS_HPP
#define BINSC_SAMPLERS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "binsc/qubo.hpp"

namespace binsc {

/// One sampled assignment. `energy` is qubo_energy(inst, state), offset
/// excluded. `readout_step` is the simulation timestep for spiking readouts
/// and 0 for every other sampler.
struct SampleResult {
    BinaryState state;
    double energy = 0.0;
    std::string solver_tag;
    int read_index = 0;
    int readout_step = 0;
};

/// Geometric inverse-temperature ramp for simulated annealing.
struct AnnealSchedule {
    int sweeps = 1000;
    double beta_start = 0.0;
    double beta_end = 0.0;
};

/// Software stand-in for the neuromorphic sampler. The firing threshold is
/// threshold_mantissa * 2^weight_exponent; additive noise is a uniform
/// integer in [-2^(noise_exponent-1), 2^(noise_exponent-1)) plus
/// noise_mantissa. readout_period == 0 means sim_steps / 10 (at least 10
/// readouts per run).
struct SpikingConfig {
    int threshold_mantissa = 96;
    int weight_exponent = 6;
    int noise_mantissa = 0;
    int noise_exponent = 7;
    double weight_scaling = 1000.0;
    int sim_steps = 10000;
    int active_window = 8;      // tau_on
    int refractory_window = 8;  // tau_ref
    int readout_period = 0;
    std::uint64_t seed = 0;

    std::int64_t threshold() const {
        return static_cast<std::int64_t>(threshold_mantissa)
               << weight_exponent;
    }
    int effective_readout_period() const {
        if (readout_period > 0) return readout_period;
        return sim_steps >= 10 ? sim_steps / 10 : 1;
    }
};

/// Saturation events etc. observed during one spiking run.
struct SpikingDiagnostics {
    std::int64_t saturation_events = 0;
    std::int64_t total_spikes = 0;
};

enum class NeuronPhase { integrating, active, refractory };

/// Per-neuron simulation state: integer membrane accumulator plus the
/// integrating -> active -> refractory -> integrating phase cycle.
struct NeuronState {
    std::int64_t potential = 0;
    NeuronPhase phase = NeuronPhase::integrating;
    int phase_remaining = 0;
};

/// Exhaustive minimum for n <= 24 variables; ties broken by the lowest
/// integer encoding of the state (bit 0 = variable 0). Throws
/// std::length_error above the capacity limit.
SampleResult brute_force(const QuboInstance& inst);

/// Metropolis single-flip annealing. Each read starts from a uniform random
/// state seeded with (seed XOR read_index) and performs `sweeps` passes over
/// the variables in index order, with beta interpolated geometrically from
/// beta_start to beta_end across sweeps. Deterministic in all arguments;
/// results come back in read order.
std::vector<SampleResult> simulated_annealing(const QuboInstance& inst,
                                              const AnnealSchedule& sched,
                                              int num_reads,
                                              std::uint64_t seed);

/// Simulates n stochastic integrate-and-fire neurons with hard refractory
/// windows for cfg.sim_steps timesteps and records the network state (a_i =
/// 1 iff neuron i is in its active phase) at every readout period, in time
/// order. Negative couplings excite, positive couplings inhibit.
std::vector<SampleResult> spiking_sample(const QuboInstance& inst,
                                         const SpikingConfig& cfg,
                                         SpikingDiagnostics* diag = nullptr);

/// Steepest-descent single flips from `start` until no flip lowers the
/// energy; ties broken by lowest variable index. Deterministic.
SampleResult greedy_descent(const QuboInstance& inst, const BinaryState& start);

/// Heuristic (beta_start, beta_end) for annealing: ln(2) over the largest
/// possible single-flip change (bounded by |h_i| + sum_j |q_ij|) and
/// ln(100) over the smallest possible nonzero one (the smallest nonzero
/// coefficient magnitude). Throws std::domain_error for an all-zero
/// instance.
std::pair<double, double> default_beta_range(const QuboInstance& inst);

/// Schedule with default sweep count and default_beta_range betas.
AnnealSchedule default_schedule(const QuboInstance& inst, int sweeps = 1000);

/// Sample dump, one row per result:
///   solver,read_index,readout_step,energy,sparsity,state
/// with the state as a 0/1 string, variable 0 leftmost.
void write_samples_csv(std::ostream& out,
                       const std::vector<SampleResult>& samples);

/// Lowest-energy sample; among equal energies the earliest wins.
const SampleResult& best_sample(const std::vector<SampleResult>& samples);

}  // namespace binsc

#endif  // BINSC_SAMPLERS_HPP
