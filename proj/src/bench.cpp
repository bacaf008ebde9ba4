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

#include "binsc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "binsc/rng.hpp"

namespace binsc {

namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------
// small utilities

void parallel_for(int count, int threads,
                  const std::function<void(int)>& body) {
    threads = std::clamp(threads, 1, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) items.push_back(trimmed(item));
    return items;
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int parsed = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw UsageError("config: key '" + key + "' needs an integer, got '" +
                         value + "'");
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw UsageError("config: key '" + key + "' needs a number, got '" +
                         value + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t parsed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw UsageError("config: key '" + key +
                         "' needs an unsigned integer, got '" + value + "'");
    }
}

std::vector<int> to_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const std::string& item : split_list(value))
        out.push_back(to_int(key, item));
    if (out.empty()) throw UsageError("config: key '" + key + "' needs values");
    return out;
}

std::vector<double> to_double_list(const std::string& key,
                                   const std::string& value) {
    std::vector<double> out;
    for (const std::string& item : split_list(value))
        out.push_back(to_double(key, item));
    if (out.empty()) throw UsageError("config: key '" + key + "' needs values");
    return out;
}

std::string solver_file_tag(SolverKind kind) { return to_string(kind); }

// Hidden ground-truth dictionary behind the synthetic datasets:
// nonnegative atoms (images are nonnegative) with norms well above the
// init_dictionary range, so there is something to learn toward.
Matrix synthetic_truth_atoms(Eigen::Index m, Eigen::Index n,
                             std::uint64_t seed) {
    rng::Engine eng(seed);
    Matrix atoms(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < m; ++i)
            atoms(i, j) = std::abs(rng::normal(eng));
        const double target = 0.35 + 0.3 * rng::uniform_unit(eng);
        atoms.col(j) *= target / atoms.col(j).norm();
    }
    return atoms;
}

// Spiking sweep over the configured grid; read_index is renumbered to a
// global sample counter so CSV rows stay unique across runs.
std::vector<SampleResult> run_spiking_sweep(const QuboInstance& inst,
                                            const ExperimentConfig& cfg,
                                            std::uint64_t base_seed) {
    std::vector<SampleResult> all;
    std::uint64_t run_index = 0;
    for (int steps : cfg.spiking_sim_steps) {
        for (double scaling : cfg.spiking_scalings) {
            for (int rep = 0; rep < cfg.spiking_seeds_per_cell; ++rep) {
                SpikingConfig run = cfg.spiking_base;
                run.sim_steps = steps;
                run.weight_scaling = scaling;
                run.seed = rng::derive_seed(base_seed, run_index++);
                for (SampleResult& r : spiking_sample(inst, run)) {
                    r.read_index = static_cast<int>(all.size());
                    all.push_back(std::move(r));
                }
            }
        }
    }
    return all;
}

std::vector<SampleResult> run_one_solver(const QuboInstance& inst,
                                         SolverKind kind,
                                         const ExperimentConfig& cfg,
                                         std::uint64_t seed) {
    switch (kind) {
        case SolverKind::sa:
            return simulated_annealing(
                inst, default_schedule(inst, cfg.sa_sweeps), cfg.sa_reads,
                seed);
        case SolverKind::spiking:
            return run_spiking_sweep(inst, cfg, seed);
        case SolverKind::brute:
            return {brute_force(inst)};
    }
    throw std::logic_error("run_one_solver: unreachable");
}

ImageSet load_dataset(const ExperimentConfig& cfg) {
    if (cfg.dataset == "synthetic") {
        const int count =
            std::max(cfg.synthetic_images, cfg.image_index + 1);
        return synthetic_images(count,
                                rng::derive_seed(cfg.master_seed, 0x1d5));
    }
    return load_idx(cfg.dataset);
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

}  // namespace

// -------------------------------------------------------------------------
// configuration

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
    if (key == "dataset") cfg.dataset = value;
    else if (key == "dictionary") cfg.dictionary = value;
    else if (key == "out") cfg.out_dir = value;
    else if (key == "seed") cfg.master_seed = to_u64(key, value);
    else if (key == "solver") {
        cfg.solvers.clear();
        for (const std::string& item : split_list(value)) {
            try {
                cfg.solvers.push_back(solver_kind_from_string(item));
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("config: ") + e.what());
            }
        }
        if (cfg.solvers.empty())
            throw UsageError("config: key 'solver' needs at least one value");
    } else if (key == "sa_reads") cfg.sa_reads = to_int(key, value);
    else if (key == "sa_sweeps") cfg.sa_sweeps = to_int(key, value);
    else if (key == "spiking_sim_steps")
        cfg.spiking_sim_steps = to_int_list(key, value);
    else if (key == "spiking_scalings")
        cfg.spiking_scalings = to_double_list(key, value);
    else if (key == "spiking_seeds_per_cell")
        cfg.spiking_seeds_per_cell = to_int(key, value);
    else if (key == "spiking_threshold_mantissa")
        cfg.spiking_base.threshold_mantissa = to_int(key, value);
    else if (key == "spiking_weight_exponent")
        cfg.spiking_base.weight_exponent = to_int(key, value);
    else if (key == "spiking_noise_mantissa")
        cfg.spiking_base.noise_mantissa = to_int(key, value);
    else if (key == "spiking_noise_exponent")
        cfg.spiking_base.noise_exponent = to_int(key, value);
    else if (key == "spiking_active_window")
        cfg.spiking_base.active_window = to_int(key, value);
    else if (key == "spiking_refractory_window")
        cfg.spiking_base.refractory_window = to_int(key, value);
    else if (key == "spiking_readout_period")
        cfg.spiking_base.readout_period = to_int(key, value);
    else if (key == "solve_lambda") cfg.solve_lambda = to_double(key, value);
    else if (key == "learn_m") cfg.learn_m = to_int(key, value);
    else if (key == "learn_n") cfg.learn_n = to_int(key, value);
    else if (key == "learn_epochs") cfg.learn_epochs = to_int(key, value);
    else if (key == "learn_eta") cfg.learn_eta = to_double(key, value);
    else if (key == "learn_target_sparsity")
        cfg.learn_target_sparsity = to_double(key, value);
    else if (key == "learn_lambda0") cfg.learn_lambda0 = to_double(key, value);
    else if (key == "learn_lambda_increment")
        cfg.learn_lambda_increment = to_double(key, value);
    else if (key == "learn_sa_reads") cfg.learn_sa_reads = to_int(key, value);
    else if (key == "learn_sa_sweeps") cfg.learn_sa_sweeps = to_int(key, value);
    else if (key == "learn_images") cfg.learn_images = to_int(key, value);
    else if (key == "init_norm_low") cfg.init_norm_low = to_double(key, value);
    else if (key == "init_norm_high")
        cfg.init_norm_high = to_double(key, value);
    else if (key == "synthetic_b") cfg.synthetic_b = to_int(key, value);
    else if (key == "synthetic_k_active")
        cfg.synthetic_k_active = to_int(key, value);
    else if (key == "synthetic_noise_sigma")
        cfg.synthetic_noise_sigma = to_double(key, value);
    else if (key == "synthetic_images")
        cfg.synthetic_images = to_int(key, value);
    else if (key == "image_index") cfg.image_index = to_int(key, value);
    else if (key == "patch_index") cfg.patch_index = to_int(key, value);
    else if (key == "dump_instances")
        cfg.dump_instances = to_int(key, value) != 0;
    else if (key == "instance") cfg.instance = value;
    else if (key == "oracle_n") cfg.oracle_n = to_int(key, value);
    else if (key == "oracle_instances")
        cfg.oracle_instances = to_int(key, value);
    else
        throw UsageError("config: unknown key '" + key + "'");
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config: " + path + ":" +
                             std::to_string(line_number) +
                             ": expected key=value");
        apply_config_line(cfg, trimmed(line.substr(0, eq)),
                          trimmed(line.substr(eq + 1)));
    }
}

// -------------------------------------------------------------------------
// synthetic data

ImageSet synthetic_images(int count, std::uint64_t seed) {
    if (count < 1)
        throw std::invalid_argument("synthetic_images: count must be >= 1");
    const Dictionary truth(
        synthetic_truth_atoms(kPatchDim, 64, rng::derive_seed(seed, 0x7)));
    ImageSet set;
    set.images.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const TrainingSet patches = synthetic_training_set(
            truth, kPatchCount, 4, 0.01,
            rng::derive_seed(seed, 100 + static_cast<std::uint64_t>(i)));
        PatchGrid grid;
        grid.patches = patches.samples.transpose();
        set.images.push_back(unpatchify(grid));
    }
    return set;
}

SparseCodingProblem random_sparse_coding_problem(Eigen::Index m,
                                                 Eigen::Index n, double lambda,
                                                 std::uint64_t seed) {
    rng::Engine eng(seed);
    Matrix atoms(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) atoms(i, j) = rng::normal(eng);
        atoms.col(j).normalize();
    }

    const Eigen::Index k = std::max<Eigen::Index>(1, n / 5);
    std::vector<Eigen::Index> positions(static_cast<std::size_t>(n));
    std::iota(positions.begin(), positions.end(), Eigen::Index{0});
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto j =
            i + rng::uniform_below(eng, static_cast<std::uint32_t>(n - i));
        std::swap(positions[static_cast<std::size_t>(i)],
                  positions[static_cast<std::size_t>(j)]);
    }
    Vector x = Vector::Zero(m);
    for (Eigen::Index i = 0; i < k; ++i)
        x += atoms.col(positions[static_cast<std::size_t>(i)]);
    for (Eigen::Index r = 0; r < m; ++r) x[r] += 0.1 * rng::normal(eng);

    return SparseCodingProblem{std::move(atoms), std::move(x), lambda};
}

QuboInstance random_sparse_coding_instance(Eigen::Index m, Eigen::Index n,
                                           double lambda, std::uint64_t seed) {
    const SparseCodingProblem p =
        random_sparse_coding_problem(m, n, lambda, seed);
    return build_qubo(p.atoms, p.x, p.lambda);
}

// -------------------------------------------------------------------------
// commands

LearnReport run_learn(const ExperimentConfig& cfg) {
    TrainingSet data{Matrix()};
    Eigen::Index m = cfg.learn_m;
    if (cfg.dataset == "synthetic") {
        const Dictionary truth(synthetic_truth_atoms(
            cfg.learn_m, cfg.learn_n, rng::derive_seed(cfg.master_seed, 0xb)));
        data = synthetic_training_set(
            truth, cfg.synthetic_b, cfg.synthetic_k_active,
            cfg.synthetic_noise_sigma, rng::derive_seed(cfg.master_seed, 0xc));
    } else {
        const ImageSet images = load_idx(cfg.dataset);
        if (images.count() == 0)
            throw std::runtime_error("run_learn: dataset has no images");
        const int use = cfg.learn_images > 0
                            ? std::min<int>(cfg.learn_images,
                                            static_cast<int>(images.count()))
                            : static_cast<int>(images.count());
        m = kPatchDim;
        Matrix samples(static_cast<Eigen::Index>(use) * kPatchCount, kPatchDim);
        for (int i = 0; i < use; ++i) {
            const PatchGrid grid = patchify(images.images[static_cast<std::size_t>(i)]);
            samples.middleRows(static_cast<Eigen::Index>(i) * kPatchCount,
                               kPatchCount) = grid.patches.transpose();
        }
        data = TrainingSet{std::move(samples)};
    }

    // A provided dictionary is the starting point (resume / dry runs);
    // otherwise start from a fresh random initialization.
    const Dictionary initial =
        cfg.dictionary.empty()
            ? init_dictionary(m, cfg.learn_n, cfg.init_norm_low,
                              cfg.init_norm_high,
                              rng::derive_seed(cfg.master_seed, 0xd))
            : load_dictionary(cfg.dictionary);
    if (initial.rows() != m)
        throw UsageError("learn: starting dictionary has " +
                         std::to_string(initial.rows()) +
                         " rows but the training data has " +
                         std::to_string(m));

    LearnConfig lc;
    lc.eta = cfg.learn_eta;
    lc.target_sparsity = cfg.learn_target_sparsity;
    lc.initial_lambda = cfg.learn_lambda0;
    lc.lambda_increment = cfg.learn_lambda_increment;
    lc.epochs = cfg.learn_epochs;
    lc.solver = cfg.solvers.empty() ? SolverKind::sa : cfg.solvers.front();
    lc.seed = rng::derive_seed(cfg.master_seed, 0xe);
    lc.sa_reads = cfg.learn_sa_reads;
    lc.sa_sweeps = cfg.learn_sa_sweeps;
    lc.spiking = cfg.spiking_base;

    auto [learned, report] = learn_dictionary(initial, data, lc);

    fs::create_directories(cfg.out_dir);
    save_dictionary(learned, (fs::path(cfg.out_dir) / "dictionary.txt").string());
    auto csv = open_output(fs::path(cfg.out_dir) / "learn_report.csv");
    write_report_csv(csv, report);
    return report;
}

RunSummary run_solve(const ExperimentConfig& cfg) {
    if (cfg.solvers.empty()) throw UsageError("solve requires a solver");
    fs::create_directories(cfg.out_dir);

    std::vector<QuboInstance> instances;
    std::optional<Dictionary> dict;
    if (!cfg.instance.empty()) {
        // Re-solve a dumped instance; no patch pipeline, no reconstruction.
        instances.push_back(load_instance(cfg.instance));
    } else {
        if (cfg.dictionary.empty())
            throw UsageError(
                "solve requires dictionary=<path> (or instance=<path>)");
        dict.emplace(load_dictionary(cfg.dictionary));
        if (dict->rows() != kPatchDim)
            throw UsageError("solve: dictionary has " +
                             std::to_string(dict->rows()) +
                             " rows; the 7x7 patch pipeline needs 49");

        const ImageSet images = load_dataset(cfg);
        if (cfg.image_index < 0 ||
            static_cast<std::size_t>(cfg.image_index) >= images.count())
            throw UsageError("solve: image_index " +
                             std::to_string(cfg.image_index) +
                             " out of range (dataset has " +
                             std::to_string(images.count()) + " images)");
        const Matrix& image =
            images.images[static_cast<std::size_t>(cfg.image_index)];
        write_pgm(image, (fs::path(cfg.out_dir) / "original.pgm").string());

        const PatchGrid grid = patchify(image);
        for (int p = 0; p < kPatchCount; ++p)
            instances.push_back(
                build_qubo(*dict, grid.patches.col(p), cfg.solve_lambda));
        if (cfg.dump_instances)
            for (int p = 0; p < kPatchCount; ++p) {
                std::ostringstream name;
                name << "qubo_patch" << std::setw(2) << std::setfill('0') << p
                     << ".txt";
                save_instance(instances[static_cast<std::size_t>(p)],
                              (fs::path(cfg.out_dir) / name.str()).string());
            }
    }

    const int patch_count = static_cast<int>(instances.size());
    RunSummary summary;
    for (SolverKind kind : cfg.solvers) {
        std::vector<std::vector<SampleResult>> samples(
            static_cast<std::size_t>(patch_count));

        const auto start = std::chrono::steady_clock::now();
        parallel_for(patch_count, cfg.threads, [&](int p) {
            const std::uint64_t patch_seed =
                cfg.master_seed + 1000ull * static_cast<std::uint64_t>(p);
            samples[static_cast<std::size_t>(p)] = run_one_solver(
                instances[static_cast<std::size_t>(p)], kind, cfg, patch_seed);
        });
        const auto stop = std::chrono::steady_clock::now();

        SolverSummary solver;
        solver.solver = kind;
        solver.wall_seconds =
            std::chrono::duration<double>(stop - start).count();
        for (int p = 0; p < patch_count; ++p) {
            const SampleResult& best =
                best_sample(samples[static_cast<std::size_t>(p)]);
            solver.best_energy.push_back(best.energy);
            solver.best_sparsity.push_back(
                static_cast<int>(sparsity(best.state)));
            solver.best_state.push_back(best.state);

            std::ostringstream name;
            name << "samples_" << solver_file_tag(kind) << "_patch"
                 << std::setw(2) << std::setfill('0') << p << ".csv";
            auto csv = open_output(fs::path(cfg.out_dir) / name.str());
            write_samples_csv(csv, samples[static_cast<std::size_t>(p)]);
        }
        solver.mean_energy =
            std::accumulate(solver.best_energy.begin(),
                            solver.best_energy.end(), 0.0) /
            patch_count;
        solver.mean_sparsity =
            std::accumulate(solver.best_sparsity.begin(),
                            solver.best_sparsity.end(), 0.0) /
            patch_count;

        if (dict) {
            PatchGrid recon;
            recon.patches.resize(kPatchDim, kPatchCount);
            for (int p = 0; p < kPatchCount; ++p)
                recon.patches.col(p) = reconstruct(
                    *dict, solver.best_state[static_cast<std::size_t>(p)]);
            write_pgm(unpatchify(recon),
                      (fs::path(cfg.out_dir) /
                       ("recon_" + solver_file_tag(kind) + ".pgm"))
                          .string());
        }
        summary.solvers.push_back(std::move(solver));
    }

    auto csv = open_output(fs::path(cfg.out_dir) / "summary.csv");
    write_summary_csv(csv, summary);
    return summary;
}

void run_trace(const ExperimentConfig& cfg) {
    const bool has_spiking =
        std::find(cfg.solvers.begin(), cfg.solvers.end(),
                  SolverKind::spiking) != cfg.solvers.end();
    if (!has_spiking)
        throw UsageError("trace requires the spiking solver to be configured");

    QuboInstance inst;
    if (!cfg.instance.empty()) {
        inst = load_instance(cfg.instance);
    } else {
        if (cfg.dictionary.empty())
            throw UsageError(
                "trace requires dictionary=<path> (or instance=<path>)");
        if (cfg.patch_index < 0 || cfg.patch_index >= kPatchCount)
            throw UsageError("trace: patch_index must lie in [0, 15]");

        const Dictionary dict = load_dictionary(cfg.dictionary);
        if (dict.rows() != kPatchDim)
            throw UsageError("trace: dictionary has " +
                             std::to_string(dict.rows()) +
                             " rows; the 7x7 patch pipeline needs 49");
        const ImageSet images = load_dataset(cfg);
        if (cfg.image_index < 0 ||
            static_cast<std::size_t>(cfg.image_index) >= images.count())
            throw UsageError("trace: image_index out of range");

        const PatchGrid grid = patchify(
            images.images[static_cast<std::size_t>(cfg.image_index)]);
        inst = build_qubo(dict, grid.patches.col(cfg.patch_index),
                          cfg.solve_lambda);
    }
    const std::uint64_t patch_seed =
        cfg.master_seed + 1000ull * static_cast<std::uint64_t>(cfg.patch_index);

    struct Cell {
        int sim_steps = 0;
        double scaling = 0.0;
        std::vector<std::vector<SampleResult>> per_seed;
    };
    std::vector<Cell> cells;
    for (int steps : cfg.spiking_sim_steps)
        for (double scaling : cfg.spiking_scalings)
            cells.push_back(Cell{steps, scaling, {}});

    parallel_for(static_cast<int>(cells.size()), cfg.threads, [&](int c) {
        Cell& cell = cells[static_cast<std::size_t>(c)];
        cell.per_seed.resize(static_cast<std::size_t>(cfg.spiking_seeds_per_cell));
        for (int rep = 0; rep < cfg.spiking_seeds_per_cell; ++rep) {
            SpikingConfig run = cfg.spiking_base;
            run.sim_steps = cell.sim_steps;
            run.weight_scaling = cell.scaling;
            run.seed = rng::derive_seed(
                patch_seed, static_cast<std::uint64_t>(c) *
                                    static_cast<std::uint64_t>(
                                        cfg.spiking_seeds_per_cell) +
                                static_cast<std::uint64_t>(rep));
            cell.per_seed[static_cast<std::size_t>(rep)] =
                spiking_sample(inst, run);
        }
    });

    fs::create_directories(cfg.out_dir);
    auto csv = open_output(fs::path(cfg.out_dir) / "trace.csv");
    csv << "sim_steps,weight_scaling,seed_index,readout_step,energy\n";
    csv << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& cell : cells)
        for (std::size_t rep = 0; rep < cell.per_seed.size(); ++rep)
            for (const SampleResult& r : cell.per_seed[rep])
                csv << cell.sim_steps << ',' << cell.scaling << ',' << rep
                    << ',' << r.readout_step << ',' << r.energy << '\n';
}

bool run_oracle(const ExperimentConfig& cfg, std::ostream& out) {
    bool all_ok = true;
    const auto report = [&](const std::string& name, bool ok,
                            const std::string& detail) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        all_ok = all_ok && ok;
    };

    // Suite 1: the QUBO transform reproduces the objective on every state.
    {
        int checked = 0;
        int mismatches = 0;
        for (int t = 0; t < 50; ++t) {
            const Eigen::Index n = 2 + (t % 11);
            const SparseCodingProblem problem = random_sparse_coding_problem(
                4, n, 0.05 * (t % 8), rng::derive_seed(cfg.master_seed, 0x100 + t));
            const Dictionary d(problem.atoms);
            const QuboInstance inst =
                build_qubo(problem.atoms, problem.x, problem.lambda);
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                BinaryState a(n);
                for (Eigen::Index i = 0; i < n; ++i) a[i] = (mask >> i) & 1u;
                const double lhs =
                    objective_energy(d, problem.x, problem.lambda, a);
                const double rhs = inst.offset + qubo_energy(inst, a);
                ++checked;
                if (std::abs(lhs - rhs) > 1e-9) ++mismatches;
            }
        }
        report("exactness", mismatches == 0,
               std::to_string(checked) + " states checked, " +
                   std::to_string(mismatches) + " mismatches");
    }

    // Suite 2: annealing reaches the enumerated optimum.
    {
        int solved = 0;
        for (int t = 0; t < cfg.oracle_instances; ++t) {
            const QuboInstance inst = random_sparse_coding_instance(
                std::max<Eigen::Index>(2, cfg.oracle_n / 2), cfg.oracle_n, 0.3,
                rng::derive_seed(cfg.master_seed, 0x200 + t));
            const SampleResult exact = brute_force(inst);
            const auto reads = simulated_annealing(
                inst, default_schedule(inst, 1000), 100,
                rng::derive_seed(cfg.master_seed, 0x300 + t));
            if (best_sample(reads).energy <= exact.energy + 1e-9) ++solved;
        }
        const int required =
            cfg.oracle_instances - std::max(1, cfg.oracle_instances / 20);
        report("sa_oracle", solved >= required,
               std::to_string(solved) + "/" +
                   std::to_string(cfg.oracle_instances) +
                   " instances solved to optimum (need " +
                   std::to_string(required) + ")");
    }

    // Suite 3: greedy descent never beats the exhaustive minimum.
    {
        int violations = 0;
        for (int t = 0; t < cfg.oracle_instances; ++t) {
            const QuboInstance inst = random_sparse_coding_instance(
                std::max<Eigen::Index>(2, cfg.oracle_n / 2), cfg.oracle_n, 0.3,
                rng::derive_seed(cfg.master_seed, 0x400 + t));
            const SampleResult exact = brute_force(inst);
            const SampleResult greedy =
                greedy_descent(inst, BinaryState::Zero(inst.size()));
            if (greedy.energy < exact.energy - 1e-9) ++violations;
        }
        report("greedy_bound", violations == 0,
               std::to_string(cfg.oracle_instances) + " instances, " +
                   std::to_string(violations) + " bound violations");
    }

    return all_ok;
}

void write_summary_csv(std::ostream& out, const RunSummary& summary) {
    out << "solver,patch,best_energy,best_sparsity\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const SolverSummary& solver : summary.solvers) {
        for (std::size_t p = 0; p < solver.best_energy.size(); ++p)
            out << to_string(solver.solver) << ',' << p << ','
                << solver.best_energy[p] << ',' << solver.best_sparsity[p]
                << '\n';
        out << to_string(solver.solver) << ",mean," << solver.mean_energy
            << ',' << solver.mean_sparsity << '\n';
    }
}

}  // namespace binsc
