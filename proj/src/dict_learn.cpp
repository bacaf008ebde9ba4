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

#include "binsc/dict_learn.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "binsc/rng.hpp"

namespace binsc {

SolverKind solver_kind_from_string(const std::string& name) {
    if (name == "sa") return SolverKind::sa;
    if (name == "spiking") return SolverKind::spiking;
    if (name == "brute") return SolverKind::brute;
    throw std::invalid_argument("unknown solver '" + name +
                                "' (expected sa, spiking, or brute)");
}

std::string to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::sa: return "sa";
        case SolverKind::spiking: return "spiking";
        case SolverKind::brute: return "brute";
    }
    return "?";
}

namespace {

void validate_config(const LearnConfig& cfg) {
    // eta == 0 is tolerated: it freezes the dictionary, which dry runs use.
    if (!(cfg.eta >= 0.0))
        throw std::invalid_argument("LearnConfig: eta must be nonnegative");
    if (!(cfg.target_sparsity > 0.0 && cfg.target_sparsity < 1.0))
        throw std::invalid_argument(
            "LearnConfig: target_sparsity must lie in (0, 1)");
    if (!(cfg.initial_lambda > 0.0))
        throw std::invalid_argument("LearnConfig: initial_lambda must be positive");
    if (cfg.epochs < 1)
        throw std::invalid_argument("LearnConfig: epochs must be >= 1");
    if (cfg.sa_reads < 1 || cfg.sa_sweeps < 1)
        throw std::invalid_argument("LearnConfig: annealing effort must be >= 1");
}

SparseSolver make_solver(const LearnConfig& cfg) {
    switch (cfg.solver) {
        case SolverKind::sa:
            return [cfg](const QuboInstance& inst, std::uint64_t seed) {
                const AnnealSchedule sched =
                    default_schedule(inst, cfg.sa_sweeps);
                const auto reads =
                    simulated_annealing(inst, sched, cfg.sa_reads, seed);
                return best_sample(reads).state;
            };
        case SolverKind::spiking:
            return [cfg](const QuboInstance& inst, std::uint64_t seed) {
                SpikingConfig run = cfg.spiking;
                run.seed = seed;
                const auto readouts = spiking_sample(inst, run);
                return best_sample(readouts).state;
            };
        case SolverKind::brute:
            return [](const QuboInstance& inst, std::uint64_t) {
                return brute_force(inst).state;
            };
    }
    throw std::logic_error("make_solver: unreachable");
}

}  // namespace

Dictionary init_dictionary(Eigen::Index m, Eigen::Index n, double norm_low,
                           double norm_high, std::uint64_t seed) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("init_dictionary: need m >= 1 and n >= 1");
    if (!(norm_low > 0.0) || norm_high < norm_low)
        throw std::invalid_argument(
            "init_dictionary: need 0 < norm_low <= norm_high");

    rng::Engine eng(seed);
    Matrix atoms(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double norm = 0.0;
        do {
            for (Eigen::Index i = 0; i < m; ++i)
                atoms(i, j) = rng::normal(eng);
            norm = atoms.col(j).norm();
        } while (norm == 0.0);
        const double target =
            norm_low + rng::uniform_unit(eng) * (norm_high - norm_low);
        atoms.col(j) *= target / norm;
    }
    return Dictionary(atoms);
}

std::pair<Dictionary, LearnReport> learn_dictionary(const Dictionary& d,
                                                    const TrainingSet& data,
                                                    const LearnConfig& cfg) {
    return learn_dictionary(d, data, cfg, make_solver(cfg));
}

std::pair<Dictionary, LearnReport> learn_dictionary(const Dictionary& d,
                                                    const TrainingSet& data,
                                                    const LearnConfig& cfg,
                                                    const SparseSolver& solve) {
    validate_config(cfg);
    const Eigen::Index b = data.count();
    const Eigen::Index m = d.rows();
    const Eigen::Index n = d.cols();
    if (b < 1) throw std::invalid_argument("learn_dictionary: empty training set");
    if (data.dim() != m)
        throw std::invalid_argument(
            "learn_dictionary: sample length " + std::to_string(data.dim()) +
            " does not match dictionary rows " + std::to_string(m));

    Matrix atoms = d.atoms();
    double lambda = cfg.initial_lambda;
    LearnReport report;
    report.epochs.reserve(static_cast<std::size_t>(cfg.epochs));

    std::vector<Eigen::Index> order(static_cast<std::size_t>(b));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    rng::Engine shuffle_eng(rng::derive_seed(cfg.seed, 0x5u));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (cfg.shuffle) {
            for (Eigen::Index i = b - 1; i > 0; --i) {
                const auto j = rng::uniform_below(
                    shuffle_eng, static_cast<std::uint32_t>(i + 1));
                std::swap(order[static_cast<std::size_t>(i)],
                          order[static_cast<std::size_t>(j)]);
            }
        }

        std::int64_t activity_count = 0;
        double error_sum = 0.0;
        for (Eigen::Index pos = 0; pos < b; ++pos) {
            const Eigen::Index idx = order[static_cast<std::size_t>(pos)];
            const Vector x = data.samples.row(idx).transpose();
            const QuboInstance inst = build_qubo(atoms, x, lambda);
            const std::uint64_t solve_seed = rng::derive_seed(
                cfg.seed,
                static_cast<std::uint64_t>(epoch) *
                        static_cast<std::uint64_t>(b) +
                    static_cast<std::uint64_t>(idx));
            const BinaryState a = solve(inst, solve_seed);
            if (a.size() != n)
                throw std::runtime_error(
                    "learn_dictionary: solver returned a state of length " +
                    std::to_string(a.size()));

            const Vector residual = x - atoms * a.cast<double>();
            error_sum += 0.5 * residual.squaredNorm();
            for (Eigen::Index k = 0; k < n; ++k)
                if (a[k]) atoms.col(k) += cfg.eta * residual;
            activity_count += sparsity(a);

            if (!atoms.allFinite())
                throw std::runtime_error(
                    "learn_dictionary: non-finite dictionary entries after "
                    "epoch " + std::to_string(epoch) + ", sample " +
                    std::to_string(idx));
        }

        const double mean_activity =
            static_cast<double>(activity_count) /
            (static_cast<double>(n) * static_cast<double>(b));
        EpochRecord record;
        record.epoch = epoch;
        record.mean_error = error_sum / static_cast<double>(b);
        record.mean_activity = mean_activity;
        record.lambda = lambda;
        record.column_norms = atoms.colwise().norm();
        report.epochs.push_back(std::move(record));

        if (mean_activity > cfg.target_sparsity) lambda += cfg.lambda_increment;
    }

    return {Dictionary(atoms), std::move(report)};
}

TrainingSet synthetic_training_set(const Dictionary& true_dict,
                                   Eigen::Index b, Eigen::Index k_active,
                                   double noise_sigma, std::uint64_t seed) {
    const Eigen::Index m = true_dict.rows();
    const Eigen::Index n = true_dict.cols();
    if (b < 1) throw std::invalid_argument("synthetic_training_set: b must be >= 1");
    if (k_active < 1 || k_active > n)
        throw std::invalid_argument(
            "synthetic_training_set: need 1 <= k_active <= n");
    if (noise_sigma < 0.0)
        throw std::invalid_argument(
            "synthetic_training_set: noise_sigma must be nonnegative");

    rng::Engine eng(seed);
    std::vector<Eigen::Index> positions(static_cast<std::size_t>(n));
    Matrix samples(b, m);
    for (Eigen::Index s = 0; s < b; ++s) {
        // Partial Fisher-Yates: the first k_active entries end up uniform
        // without replacement.
        std::iota(positions.begin(), positions.end(), Eigen::Index{0});
        for (Eigen::Index i = 0; i < k_active; ++i) {
            const auto j = i + rng::uniform_below(
                                   eng, static_cast<std::uint32_t>(n - i));
            std::swap(positions[static_cast<std::size_t>(i)],
                      positions[static_cast<std::size_t>(j)]);
        }
        Vector x = Vector::Zero(m);
        for (Eigen::Index i = 0; i < k_active; ++i)
            x += true_dict.atoms().col(positions[static_cast<std::size_t>(i)]);
        if (noise_sigma > 0.0)
            for (Eigen::Index r = 0; r < m; ++r)
                x[r] += noise_sigma * rng::normal(eng);
        samples.row(s) = x.cwiseMax(0.0).cwiseMin(1.0).transpose();
    }
    return TrainingSet{std::move(samples)};
}

void write_dictionary(std::ostream& out, const Dictionary& d) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "m " << d.rows() << " n " << d.cols() << "\n";
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
        for (Eigen::Index c = 0; c < d.cols(); ++c) {
            if (c) out << ' ';
            out << d.atoms()(r, c);
        }
        out << '\n';
    }
}

Dictionary read_dictionary(std::istream& in) {
    std::string tag;
    Eigen::Index m = 0, n = 0;
    if (!(in >> tag) || tag != "m" || !(in >> m) || !(in >> tag) ||
        tag != "n" || !(in >> n) || m < 1 || n < 1)
        throw std::runtime_error("read_dictionary: malformed header");
    Matrix atoms(m, n);
    for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            if (!(in >> atoms(r, c)))
                throw std::runtime_error(
                    "read_dictionary: truncated at row " + std::to_string(r));
    return Dictionary(atoms);
}

void save_dictionary(const Dictionary& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_dictionary: cannot open " + path);
    write_dictionary(out, d);
}

Dictionary load_dictionary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dictionary: cannot open " + path);
    return read_dictionary(in);
}

void write_report_csv(std::ostream& out, const LearnReport& report) {
    out << "epoch,mean_error,mean_activity,lambda";
    const Eigen::Index n =
        report.epochs.empty() ? 0 : report.epochs.front().column_norms.size();
    for (Eigen::Index j = 0; j < n; ++j) out << ",norm_" << j;
    out << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const EpochRecord& record : report.epochs) {
        out << record.epoch << ',' << record.mean_error << ','
            << record.mean_activity << ',' << record.lambda;
        for (Eigen::Index j = 0; j < record.column_norms.size(); ++j)
            out << ',' << record.column_norms[j];
        out << '\n';
    }
}

}  // namespace binsc
