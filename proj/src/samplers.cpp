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

#include "binsc/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "binsc/rng.hpp"

namespace binsc {

namespace {

constexpr Eigen::Index kBruteForceLimit = 24;

// Symmetrized coupling matrix W = q + q^T; W.col(i) holds every coupling
// touching variable i, which makes single-flip field updates contiguous.
Matrix symmetrized(const QuboInstance& inst) {
    return inst.coupling + inst.coupling.transpose();
}

// Energy change for flipping variable i given the local field
// f_i = sum_j W(i,j) a_j.
inline double flip_delta(const QuboInstance& inst, const BinaryState& a,
                         const Vector& field, Eigen::Index i) {
    const double d = inst.h[i] + field[i];
    return a[i] ? -d : d;
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b,
                            std::int64_t& events) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        ++events;
        return b > 0 ? std::numeric_limits<std::int64_t>::max()
                     : std::numeric_limits<std::int64_t>::min();
    }
    return out;
}

}  // namespace

SampleResult brute_force(const QuboInstance& inst) {
    validate_instance(inst);
    const Eigen::Index n = inst.size();
    if (n > kBruteForceLimit)
        throw std::length_error("brute_force: " + std::to_string(n) +
                                " variables exceed the capacity of " +
                                std::to_string(kBruteForceLimit));

    const Matrix w = symmetrized(inst);
    BinaryState a = BinaryState::Zero(n);
    Vector field = Vector::Zero(n);

    // Gray-code walk: step k flips bit ctz(k), visiting every state once.
    double energy = 0.0;
    std::uint32_t encoding = 0;
    double best_energy = 0.0;
    std::uint32_t best_encoding = 0;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int i = std::countr_zero(k);
        energy += flip_delta(inst, a, field, i);
        if (a[i]) {
            a[i] = 0;
            field -= w.col(i);
            encoding &= ~(1u << i);
        } else {
            a[i] = 1;
            field += w.col(i);
            encoding |= 1u << i;
        }
        if (energy < best_energy ||
            (energy == best_energy && encoding < best_encoding)) {
            best_energy = energy;
            best_encoding = encoding;
        }
    }

    SampleResult result;
    result.state = BinaryState::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        result.state[i] = (best_encoding >> i) & 1u;
    result.energy = qubo_energy(inst, result.state);  // drift-free value
    result.solver_tag = "brute";
    return result;
}

std::vector<SampleResult> simulated_annealing(const QuboInstance& inst,
                                              const AnnealSchedule& sched,
                                              int num_reads,
                                              std::uint64_t seed) {
    validate_instance(inst);
    if (sched.sweeps < 1)
        throw std::invalid_argument("simulated_annealing: sweeps must be >= 1");
    if (!(sched.beta_start > 0.0) || sched.beta_end < sched.beta_start)
        throw std::invalid_argument(
            "simulated_annealing: need 0 < beta_start <= beta_end");
    if (num_reads < 1)
        throw std::invalid_argument("simulated_annealing: num_reads must be >= 1");

    const Eigen::Index n = inst.size();
    const Matrix w = symmetrized(inst);
    const double beta_ratio = sched.beta_end / sched.beta_start;

    std::vector<SampleResult> results;
    results.reserve(static_cast<std::size_t>(num_reads));
    for (int read = 0; read < num_reads; ++read) {
        rng::Engine eng(seed ^ static_cast<std::uint64_t>(read));

        BinaryState a(n);
        for (Eigen::Index i = 0; i < n; ++i)
            a[i] = static_cast<std::uint8_t>(rng::uniform_below(eng, 2));
        Vector field = w * a.cast<double>();

        for (int sweep = 0; sweep < sched.sweeps; ++sweep) {
            const double t =
                sched.sweeps > 1
                    ? static_cast<double>(sweep) / (sched.sweeps - 1)
                    : 0.0;
            const double beta = sched.beta_start * std::pow(beta_ratio, t);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double delta = flip_delta(inst, a, field, i);
                bool accept = delta <= 0.0;
                if (!accept)
                    accept = rng::uniform_unit(eng) < std::exp(-beta * delta);
                if (accept) {
                    if (a[i]) {
                        a[i] = 0;
                        field -= w.col(i);
                    } else {
                        a[i] = 1;
                        field += w.col(i);
                    }
                }
            }
        }

        SampleResult result;
        result.state = a;
        result.energy = qubo_energy(inst, a);
        result.solver_tag = "sa";
        result.read_index = read;
        results.push_back(std::move(result));
    }
    return results;
}

std::vector<SampleResult> spiking_sample(const QuboInstance& inst,
                                         const SpikingConfig& cfg,
                                         SpikingDiagnostics* diag) {
    validate_instance(inst);
    if (cfg.threshold() <= 0)
        throw std::invalid_argument("spiking_sample: firing threshold must be positive");
    if (cfg.sim_steps < 1 || cfg.active_window < 1 ||
        cfg.refractory_window < 1 || cfg.effective_readout_period() < 1)
        throw std::invalid_argument("spiking_sample: steps and windows must be >= 1");
    if (!(cfg.weight_scaling > 0.0))
        throw std::invalid_argument("spiking_sample: weight_scaling must be positive");

    const Eigen::Index n = inst.size();
    const std::int64_t threshold = cfg.threshold();
    const int readout_period = cfg.effective_readout_period();

    SpikingDiagnostics local;

    // Integer synapse weights. Drives come from -h (a negative field excites
    // its neuron); couplings enter subtractively, so positive q inhibits and
    // negative q excites. Scaled values beyond the accumulator range clamp
    // and count as saturation events.
    const auto quantize = [&](double value) -> std::int64_t {
        const double scaled = cfg.weight_scaling * value;
        constexpr double kLimit = 9.2e18;  // just inside the int64 range
        if (scaled >= kLimit) {
            ++local.saturation_events;
            return std::numeric_limits<std::int64_t>::max();
        }
        if (scaled <= -kLimit) {
            ++local.saturation_events;
            return std::numeric_limits<std::int64_t>::min();
        }
        return std::llround(scaled);
    };

    std::vector<std::int64_t> drive(static_cast<std::size_t>(n));
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> synapse(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        drive[static_cast<std::size_t>(i)] = quantize(-inst.h[i]);
        for (Eigen::Index j = 0; j < n; ++j)
            synapse(i, j) = quantize(inst.coupling_between(i, j));
    }

    const std::int64_t noise_half =
        cfg.noise_exponent >= 1 ? (std::int64_t{1} << (cfg.noise_exponent - 1))
                                : 0;
    const std::uint32_t noise_span =
        static_cast<std::uint32_t>(2 * noise_half);

    rng::Engine eng(cfg.seed);
    std::vector<NeuronState> neurons(static_cast<std::size_t>(n));
    std::vector<Eigen::Index> active;
    active.reserve(static_cast<std::size_t>(n));

    std::vector<SampleResult> readouts;
    readouts.reserve(static_cast<std::size_t>(cfg.sim_steps / readout_period) +
                     1);

    for (int step = 1; step <= cfg.sim_steps; ++step) {
        // Synaptic input uses the phases from the start of the step.
        active.clear();
        for (Eigen::Index j = 0; j < n; ++j)
            if (neurons[static_cast<std::size_t>(j)].phase ==
                NeuronPhase::active)
                active.push_back(j);

        for (Eigen::Index i = 0; i < n; ++i) {
            NeuronState& neuron = neurons[static_cast<std::size_t>(i)];
            switch (neuron.phase) {
                case NeuronPhase::active:
                    if (--neuron.phase_remaining == 0) {
                        neuron.phase = NeuronPhase::refractory;
                        neuron.phase_remaining = cfg.refractory_window;
                    }
                    break;
                case NeuronPhase::refractory:
                    if (--neuron.phase_remaining == 0)
                        neuron.phase = NeuronPhase::integrating;
                    break;
                case NeuronPhase::integrating: {
                    std::int64_t input =
                        drive[static_cast<std::size_t>(i)] + cfg.noise_mantissa;
                    if (noise_span > 0)
                        input += static_cast<std::int64_t>(
                                     rng::uniform_below(eng, noise_span)) -
                                 noise_half;
                    for (Eigen::Index j : active)
                        input = saturating_add(input, -synapse(i, j),
                                               local.saturation_events);
                    neuron.potential = saturating_add(
                        neuron.potential, input, local.saturation_events);
                    if (neuron.potential >= threshold) {
                        neuron.phase = NeuronPhase::active;
                        neuron.phase_remaining = cfg.active_window;
                        neuron.potential = 0;
                        ++local.total_spikes;
                    }
                    break;
                }
            }
        }

        if (step % readout_period == 0) {
            SampleResult readout;
            readout.state = BinaryState::Zero(n);
            for (Eigen::Index i = 0; i < n; ++i)
                readout.state[i] = neurons[static_cast<std::size_t>(i)].phase ==
                                   NeuronPhase::active;
            readout.energy = qubo_energy(inst, readout.state);
            readout.solver_tag = "spiking";
            readout.read_index = static_cast<int>(readouts.size());
            readout.readout_step = step;
            readouts.push_back(std::move(readout));
        }
    }

    if (diag) *diag = local;
    return readouts;
}

SampleResult greedy_descent(const QuboInstance& inst,
                            const BinaryState& start) {
    validate_instance(inst);
    if (start.size() != inst.size())
        throw std::invalid_argument("greedy_descent: start length " +
                                    std::to_string(start.size()) +
                                    " does not match instance size " +
                                    std::to_string(inst.size()));
    if (!is_binary(start))
        throw std::invalid_argument("greedy_descent: start has non-binary entries");

    const Eigen::Index n = inst.size();
    const Matrix w = symmetrized(inst);
    BinaryState a = start;
    Vector field = w * a.cast<double>();

    for (;;) {
        Eigen::Index best_i = -1;
        double best_delta = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double delta = flip_delta(inst, a, field, i);
            if (delta < best_delta) {
                best_delta = delta;
                best_i = i;
            }
        }
        if (best_i < 0) break;
        if (a[best_i]) {
            a[best_i] = 0;
            field -= w.col(best_i);
        } else {
            a[best_i] = 1;
            field += w.col(best_i);
        }
    }

    SampleResult result;
    result.state = a;
    result.energy = qubo_energy(inst, a);
    result.solver_tag = "greedy";
    return result;
}

std::pair<double, double> default_beta_range(const QuboInstance& inst) {
    validate_instance(inst);
    const Eigen::Index n = inst.size();
    const Matrix w = symmetrized(inst);

    // Largest possible single-flip change: the per-variable bound
    // |h_i| + sum_j |q_ij|. Smallest possible nonzero change: the smallest
    // nonzero coefficient magnitude, so the coldest beta freezes even the
    // weakest bias at ~1% acceptance.
    double max_change = 0.0;
    double min_change = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        max_change = std::max(
            max_change, std::abs(inst.h[i]) + w.col(i).cwiseAbs().sum());
        if (inst.h[i] != 0.0)
            min_change = std::min(min_change, std::abs(inst.h[i]));
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (inst.coupling(i, j) != 0.0)
                min_change =
                    std::min(min_change, std::abs(inst.coupling(i, j)));
    }
    if (max_change == 0.0)
        throw std::domain_error(
            "default_beta_range: every coefficient is zero, schedule undefined");
    return {std::log(2.0) / max_change, std::log(100.0) / min_change};
}

AnnealSchedule default_schedule(const QuboInstance& inst, int sweeps) {
    const auto [beta_start, beta_end] = default_beta_range(inst);
    return AnnealSchedule{sweeps, beta_start, beta_end};
}

void write_samples_csv(std::ostream& out,
                       const std::vector<SampleResult>& samples) {
    out << "solver,read_index,readout_step,energy,sparsity,state\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const SampleResult& s : samples)
        out << s.solver_tag << ',' << s.read_index << ',' << s.readout_step
            << ',' << s.energy << ',' << sparsity(s.state) << ','
            << state_to_string(s.state) << '\n';
}

const SampleResult& best_sample(const std::vector<SampleResult>& samples) {
    if (samples.empty())
        throw std::invalid_argument("best_sample: empty sample set");
    const SampleResult* best = &samples.front();
    for (const SampleResult& s : samples)
        if (s.energy < best->energy) best = &s;
    return *best;
}

}  // namespace binsc
