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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <tuple>
#include <algorithm>
#include <sstream>

using namespace binsc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "binsc_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_small_dictionary(const fs::path& dir) {
    const Dictionary dict = init_dictionary(kPatchDim, 16, 0.05, 0.3, 404);
    const fs::path path = dir / "dict.txt";
    save_dictionary(dict, path.string());
    return path;
}

// Scaled-down protocol so the whole pipeline stays test-sized.
ExperimentConfig small_solve_config(const fs::path& out,
                                    const fs::path& dict_path) {
    ExperimentConfig cfg;
    cfg.out_dir = out.string();
    cfg.dictionary = dict_path.string();
    cfg.master_seed = 5;
    cfg.solvers = {SolverKind::sa, SolverKind::brute};
    cfg.sa_reads = 20;
    cfg.sa_sweeps = 50;
    cfg.solve_lambda = 0.4;
    cfg.synthetic_images = 2;
    return cfg;
}

}  // namespace

TEST_CASE("config keys parse into the experiment config") {
    ExperimentConfig cfg;
    apply_config_line(cfg, "dataset", "images.idx");
    apply_config_line(cfg, "seed", "99");
    apply_config_line(cfg, "solver", "sa,brute");
    apply_config_line(cfg, "sa_reads", "123");
    apply_config_line(cfg, "spiking_sim_steps", "100, 200");
    apply_config_line(cfg, "spiking_scalings", "10,20,30");
    apply_config_line(cfg, "spiking_seeds_per_cell", "7");
    apply_config_line(cfg, "solve_lambda", "0.25");

    CHECK(cfg.dataset == "images.idx");
    CHECK(cfg.master_seed == 99);
    REQUIRE(cfg.solvers.size() == 2);
    CHECK(cfg.solvers[0] == SolverKind::sa);
    CHECK(cfg.solvers[1] == SolverKind::brute);
    CHECK(cfg.sa_reads == 123);
    CHECK(cfg.spiking_sim_steps == std::vector<int>({100, 200}));
    CHECK(cfg.spiking_scalings == std::vector<double>({10, 20, 30}));
    CHECK(cfg.total_spiking_samples_per_qubo() == 2 * 3 * 7);
    CHECK(cfg.solve_lambda == 0.25);
}

TEST_CASE("default sweep matches the benchmark protocol") {
    ExperimentConfig cfg;
    CHECK(cfg.sa_reads == 1000);
    CHECK(cfg.total_spiking_samples_per_qubo() == 2000);  // 4 * 5 * 100
}

TEST_CASE("config rejects unknown keys and bad values") {
    ExperimentConfig cfg;
    CHECK_THROWS_AS(apply_config_line(cfg, "sa_reeds", "10"), UsageError);
    CHECK_THROWS_AS(apply_config_line(cfg, "sa_reads", "ten"), UsageError);
    CHECK_THROWS_AS(apply_config_line(cfg, "solver", "quantum"), UsageError);
    CHECK_THROWS_AS(apply_config_line(cfg, "seed", "x17"), UsageError);
}

TEST_CASE("config files support comments and blank lines") {
    const fs::path dir = temp_dir("config");
    const fs::path path = dir / "exp.cfg";
    {
        std::ofstream out(path);
        out << "# protocol\n\nsa_reads = 77\nsolver=sa # inline comment\n";
    }
    ExperimentConfig cfg;
    apply_config_file(cfg, path.string());
    CHECK(cfg.sa_reads == 77);
    REQUIRE(cfg.solvers.size() == 1);
    CHECK(cfg.solvers[0] == SolverKind::sa);

    ExperimentConfig other;
    CHECK_THROWS_AS(apply_config_file(other, (dir / "missing.cfg").string()),
                    UsageError);
    {
        std::ofstream out(path);
        out << "sa_reads\n";
    }
    CHECK_THROWS_AS(apply_config_file(other, path.string()), UsageError);
}

TEST_CASE("synthetic images are deterministic, in range, and 28x28") {
    const ImageSet a = synthetic_images(3, 42);
    const ImageSet b = synthetic_images(3, 42);
    REQUIRE(a.count() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.images[i].rows() == 28);
        CHECK(a.images[i].cols() == 28);
        CHECK(a.images[i].minCoeff() >= 0.0);
        CHECK(a.images[i].maxCoeff() <= 1.0);
        CHECK(a.images[i] == b.images[i]);
    }
    const ImageSet c = synthetic_images(3, 43);
    CHECK(a.images[0] != c.images[0]);
}

TEST_CASE("run_learn writes a dictionary and a report") {
    const fs::path out = temp_dir("learn");
    ExperimentConfig cfg;
    cfg.out_dir = out.string();
    cfg.dataset = "synthetic";
    cfg.learn_m = 9;
    cfg.learn_n = 12;
    cfg.learn_epochs = 2;
    cfg.learn_eta = 0.05;
    cfg.learn_target_sparsity = 0.2;
    cfg.learn_sa_reads = 2;
    cfg.learn_sa_sweeps = 25;
    cfg.synthetic_b = 12;
    cfg.synthetic_k_active = 2;
    cfg.master_seed = 7;
    cfg.solvers = {SolverKind::sa};

    const LearnReport report = run_learn(cfg);
    REQUIRE(report.epochs.size() == 2);
    CHECK(fs::exists(out / "dictionary.txt"));
    CHECK(fs::exists(out / "learn_report.csv"));

    const Dictionary learned =
        load_dictionary((out / "dictionary.txt").string());
    CHECK(learned.rows() == 9);
    CHECK(learned.cols() == 12);
}

TEST_CASE("run_learn with eta 0 reproduces the starting dictionary") {
    const fs::path out = temp_dir("learn_frozen");
    const Dictionary start = init_dictionary(9, 12, 0.05, 0.3, 123);
    const fs::path start_path = out / "start.txt";
    save_dictionary(start, start_path.string());

    ExperimentConfig cfg;
    cfg.out_dir = (out / "run").string();
    cfg.dataset = "synthetic";
    cfg.dictionary = start_path.string();
    cfg.learn_m = 9;
    cfg.learn_epochs = 1;
    cfg.learn_eta = 0.0;
    cfg.learn_sa_reads = 2;
    cfg.learn_sa_sweeps = 20;
    cfg.synthetic_b = 6;
    cfg.synthetic_k_active = 2;
    cfg.solvers = {SolverKind::sa};

    run_learn(cfg);
    const Dictionary final_dict =
        load_dictionary((out / "run" / "dictionary.txt").string());
    CHECK(final_dict.atoms() == start.atoms());
}

TEST_CASE("run_solve writes consistent summaries and reconstructions") {
    const fs::path out = temp_dir("solve");
    const fs::path dict_path = write_small_dictionary(out);
    ExperimentConfig cfg = small_solve_config(out / "run", dict_path);

    const RunSummary summary = run_solve(cfg);
    REQUIRE(summary.solvers.size() == 2);

    for (const SolverSummary& solver : summary.solvers) {
        REQUIRE(solver.best_energy.size() == 16);
        double mean_energy = 0.0, mean_sparsity = 0.0;
        for (int p = 0; p < 16; ++p) {
            mean_energy += solver.best_energy[size_t(p)];
            mean_sparsity += solver.best_sparsity[size_t(p)];
        }
        CHECK(std::abs(solver.mean_energy - mean_energy / 16) <= 1e-12);
        CHECK(std::abs(solver.mean_sparsity - mean_sparsity / 16) <= 1e-12);
    }

    // annealing can never beat the exhaustive optimum, and with this read
    // budget on n=16 it should match it on most patches
    const SolverSummary& sa = summary.solvers[0];
    const SolverSummary& exact = summary.solvers[1];
    for (int p = 0; p < 16; ++p)
        CHECK(sa.best_energy[size_t(p)] >= exact.best_energy[size_t(p)] - 1e-9);

    CHECK(fs::exists(out / "run" / "original.pgm"));
    CHECK(fs::exists(out / "run" / "recon_sa.pgm"));
    CHECK(fs::exists(out / "run" / "recon_brute.pgm"));
    CHECK(fs::exists(out / "run" / "summary.csv"));
    CHECK(fs::exists(out / "run" / "samples_sa_patch00.csv"));
    CHECK(fs::exists(out / "run" / "samples_sa_patch15.csv"));
    CHECK(fs::exists(out / "run" / "samples_brute_patch07.csv"));

    // the recorded best energy is the minimum of the dumped samples
    std::ifstream csv(out / "run" / "samples_sa_patch03.csv");
    std::string line;
    std::getline(csv, line);  // header
    double min_energy = std::numeric_limits<double>::infinity();
    int rows = 0;
    while (std::getline(csv, line)) {
        std::stringstream row(line);
        std::string field;
        for (int f = 0; f < 4; ++f) std::getline(row, field, ',');
        min_energy = std::min(min_energy, std::stod(field));
        ++rows;
    }
    CHECK(rows == cfg.sa_reads);
    CHECK(sa.best_energy[3] == doctest::Approx(min_energy).epsilon(1e-12));
}

TEST_CASE("dumped patch instances reload into identical problems") {
    const fs::path out = temp_dir("solve_dump");
    const fs::path dict_path = write_small_dictionary(out);
    ExperimentConfig cfg = small_solve_config(out / "run", dict_path);
    cfg.solvers = {SolverKind::brute};

    const RunSummary summary = run_solve(cfg);
    for (int p : {0, 5, 15}) {
        std::ostringstream name;
        name << "qubo_patch" << std::setw(2) << std::setfill('0') << p
             << ".txt";
        const QuboInstance reloaded =
            load_instance((out / "run" / name.str()).string());
        CHECK(brute_force(reloaded).energy ==
              doctest::Approx(summary.solvers[0].best_energy[std::size_t(p)])
                  .epsilon(1e-12));
    }

    SUBCASE("a reloaded instance can be re-solved directly") {
        ExperimentConfig again;
        again.out_dir = (out / "again").string();
        again.instance = (out / "run" / "qubo_patch05.txt").string();
        again.solvers = {SolverKind::brute};
        const RunSummary re = run_solve(again);
        REQUIRE(re.solvers.size() == 1);
        REQUIRE(re.solvers[0].best_energy.size() == 1);
        CHECK(re.solvers[0].best_energy[0] ==
              doctest::Approx(summary.solvers[0].best_energy[5])
                  .epsilon(1e-12));
        CHECK(fs::exists(out / "again" / "samples_brute_patch00.csv"));
        CHECK(fs::exists(out / "again" / "summary.csv"));
    }

    SUBCASE("dump_instances=0 suppresses the dumps") {
        ExperimentConfig lean = small_solve_config(out / "lean", dict_path);
        lean.solvers = {SolverKind::brute};
        lean.dump_instances = false;
        run_solve(lean);
        CHECK(!fs::exists(out / "lean" / "qubo_patch00.txt"));
    }
}

TEST_CASE("run_solve outputs are byte-identical across repeat runs") {
    const fs::path out = temp_dir("solve_repeat");
    const fs::path dict_path = write_small_dictionary(out);

    ExperimentConfig cfg_a = small_solve_config(out / "a", dict_path);
    cfg_a.solvers = {SolverKind::sa};
    ExperimentConfig cfg_b = small_solve_config(out / "b", dict_path);
    cfg_b.solvers = {SolverKind::sa};
    cfg_b.threads = 4;  // parallel run must not change any output byte

    run_solve(cfg_a);
    run_solve(cfg_b);

    CHECK(slurp(out / "a" / "summary.csv") == slurp(out / "b" / "summary.csv"));
    for (const char* name :
         {"samples_sa_patch00.csv", "samples_sa_patch09.csv", "recon_sa.pgm"})
        CHECK(slurp(out / "a" / name) == slurp(out / "b" / name));
}

TEST_CASE("run_solve usage errors") {
    const fs::path out = temp_dir("solve_errors");
    ExperimentConfig cfg;
    cfg.out_dir = out.string();
    CHECK_THROWS_AS(run_solve(cfg), UsageError);  // no dictionary

    const fs::path dict_path = write_small_dictionary(out);
    cfg = small_solve_config(out, dict_path);
    ImageSet one;
    one.images.push_back(Matrix::Zero(28, 28));
    save_idx(one, (out / "one.idx").string());
    cfg.dataset = (out / "one.idx").string();
    cfg.image_index = 99;  // dataset only has one image
    CHECK_THROWS_AS(run_solve(cfg), UsageError);

    const Dictionary wrong = init_dictionary(10, 4, 0.05, 0.3, 1);
    save_dictionary(wrong, (out / "wrong.txt").string());
    cfg = small_solve_config(out, out / "wrong.txt");
    CHECK_THROWS_AS(run_solve(cfg), UsageError);
}

TEST_CASE("run_trace emits the sweep with at least ten readouts per cell") {
    const fs::path out = temp_dir("trace");
    const fs::path dict_path = write_small_dictionary(out);

    ExperimentConfig cfg = small_solve_config(out / "run", dict_path);
    cfg.solvers = {SolverKind::spiking};
    cfg.spiking_sim_steps = {2000, 4000};
    cfg.spiking_scalings = {1000, 10000};
    cfg.spiking_seeds_per_cell = 2;
    cfg.patch_index = 4;
    cfg.solve_lambda = 0.02;  // low enough that atoms fire

    run_trace(cfg);
    std::ifstream csv(out / "run" / "trace.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "sim_steps,weight_scaling,seed_index,readout_step,energy");

    // rows keyed by one sweep run: (sim_steps, scaling, seed)
    std::map<std::tuple<int, double, int>, std::vector<double>> runs;
    std::string line;
    while (std::getline(csv, line)) {
        std::stringstream row(line);
        std::string steps, scaling, seed, readout, energy;
        std::getline(row, steps, ',');
        std::getline(row, scaling, ',');
        std::getline(row, seed, ',');
        std::getline(row, readout, ',');
        std::getline(row, energy, ',');
        runs[{std::stoi(steps), std::stod(scaling), std::stoi(seed)}]
            .push_back(std::stod(energy));
        CHECK(std::stoi(readout) % (std::stoi(steps) / 10) == 0);
    }
    REQUIRE(runs.size() == 8);
    bool any_excursion = false;
    for (const auto& [key, energies] : runs) {
        CHECK(energies.size() == 10);
        double best = *std::min_element(energies.begin(), energies.end());
        bool fell = false;
        for (std::size_t i = 1; i < energies.size(); ++i) {
            if (energies[i] < energies[i - 1]) fell = true;
            else if (fell && best < 0.0 && energies[i] > energies[i - 1])
                any_excursion = true;
        }
    }
    // refractory excursions: some run rises again after reaching below zero
    CHECK(any_excursion);

    SUBCASE("trace without the spiking solver is a usage error") {
        cfg.solvers = {SolverKind::sa};
        CHECK_THROWS_AS(run_trace(cfg), UsageError);
    }
}

TEST_CASE("an all-zero image solves to all-zero states at positive lambda") {
    const fs::path out = temp_dir("solve_zero_image");
    const fs::path dict_path = write_small_dictionary(out);
    ImageSet zeros;
    zeros.images.push_back(Matrix::Zero(28, 28));
    save_idx(zeros, (out / "zeros.idx").string());

    ExperimentConfig cfg = small_solve_config(out / "run", dict_path);
    cfg.dataset = (out / "zeros.idx").string();
    cfg.solve_lambda = 0.25;
    const RunSummary summary = run_solve(cfg);
    for (const SolverSummary& solver : summary.solvers)
        for (int p = 0; p < 16; ++p) {
            CHECK(solver.best_energy[std::size_t(p)] == 0.0);
            CHECK(solver.best_sparsity[std::size_t(p)] == 0);
        }

    std::ifstream pgm(out / "run" / "recon_sa.pgm");
    std::string magic;
    int w, h, maxval, v, total = 0;
    pgm >> magic >> w >> h >> maxval;
    while (pgm >> v) total += v;
    CHECK(total == 0);
}

TEST_CASE("run_oracle passes on shipped seeds and reports suites") {
    ExperimentConfig cfg;
    cfg.master_seed = 1;
    cfg.oracle_n = 10;
    cfg.oracle_instances = 5;

    std::stringstream log;
    CHECK(run_oracle(cfg, log));
    const std::string text = log.str();
    CHECK(text.find("[PASS] exactness") != std::string::npos);
    CHECK(text.find("[PASS] sa_oracle") != std::string::npos);
    CHECK(text.find("[PASS] greedy_bound") != std::string::npos);
    CHECK(text.find("[FAIL]") == std::string::npos);
}

TEST_CASE("run_oracle surfaces the brute-force capacity limit") {
    ExperimentConfig cfg;
    cfg.oracle_n = 30;
    cfg.oracle_instances = 1;
    std::stringstream log;
    CHECK_THROWS_AS(run_oracle(cfg, log), std::length_error);
}

TEST_CASE("summary CSV layout") {
    RunSummary summary;
    SolverSummary solver;
    solver.solver = SolverKind::sa;
    solver.best_energy = {-1.0, -2.0};
    solver.best_sparsity = {1, 2};
    solver.mean_energy = -1.5;
    solver.mean_sparsity = 1.5;
    summary.solvers.push_back(solver);

    std::stringstream buf;
    write_summary_csv(buf, summary);
    std::string line;
    std::getline(buf, line);
    CHECK(line == "solver,patch,best_energy,best_sparsity");
    std::getline(buf, line);
    CHECK(line == "sa,0,-1,1");
    std::getline(buf, line);
    CHECK(line == "sa,1,-2,2");
    std::getline(buf, line);
    CHECK(line == "sa,mean,-1.5,1.5");
}

TEST_CASE("random sparse coding problems are reproducible") {
    const QuboInstance a = random_sparse_coding_instance(8, 16, 0.3, 99);
    const QuboInstance b = random_sparse_coding_instance(8, 16, 0.3, 99);
    CHECK(a.h == b.h);
    CHECK(a.coupling == b.coupling);
    CHECK(a.offset == b.offset);
    const QuboInstance c = random_sparse_coding_instance(8, 16, 0.3, 100);
    CHECK(a.h != c.h);
}
