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

#include "binsc/qubo.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace binsc {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

void check_state(const QuboInstance& inst, const BinaryState& a,
                 const char* who) {
    require(a.size() == inst.size(),
            std::string(who) + ": state length " + std::to_string(a.size()) +
                " does not match instance size " +
                std::to_string(inst.size()));
    require(is_binary(a), std::string(who) + ": state has non-binary entries");
}

}  // namespace

bool is_binary(const BinaryState& a) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] > 1) return false;
    return true;
}

BinaryState state_from_string(const std::string& bits) {
    BinaryState a(static_cast<Eigen::Index>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("state_from_string: character '" +
                                        std::string(1, bits[i]) +
                                        "' is not 0 or 1");
        a[static_cast<Eigen::Index>(i)] = bits[i] == '1';
    }
    return a;
}

std::string state_to_string(const BinaryState& a) {
    std::string out(static_cast<std::size_t>(a.size()), '0');
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i]) out[static_cast<std::size_t>(i)] = '1';
    return out;
}

Dictionary::Dictionary(Matrix atoms) : atoms_(std::move(atoms)) {
    require(atoms_.rows() >= 1 && atoms_.cols() >= 1,
            "Dictionary: need at least one row and one column");
    require(atoms_.allFinite(), "Dictionary: entries must be finite");
    for (Eigen::Index j = 0; j < atoms_.cols(); ++j)
        require(atoms_.col(j).norm() > 0.0,
                "Dictionary: column " + std::to_string(j) + " has zero norm");
}

void validate_instance(const QuboInstance& inst) {
    const Eigen::Index n = inst.h.size();
    require(n >= 1, "QuboInstance: empty h");
    require(inst.coupling.rows() == n && inst.coupling.cols() == n,
            "QuboInstance: coupling table must be n x n");
    require(inst.h.allFinite() && inst.coupling.allFinite() &&
                std::isfinite(inst.offset),
            "QuboInstance: coefficients must be finite");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            require(inst.coupling(i, j) == 0.0,
                    "QuboInstance: coupling table must be strictly upper "
                    "triangular");
}

QuboInstance build_qubo(const Dictionary& d, const Vector& x, double lambda) {
    return build_qubo(d.atoms(), x, lambda);
}

QuboInstance build_qubo(const Matrix& atoms, const Vector& x, double lambda) {
    require(x.size() == atoms.rows(),
            "build_qubo: signal length " + std::to_string(x.size()) +
                " does not match dictionary rows " +
                std::to_string(atoms.rows()));
    require(x.allFinite(), "build_qubo: signal must be finite");
    require(lambda >= 0.0 && std::isfinite(lambda),
            "build_qubo: penalty must be nonnegative");

    const Matrix gram = atoms.transpose() * atoms;

    QuboInstance inst;
    inst.h = -(atoms.transpose() * x) +
             Vector::Constant(atoms.cols(), lambda) + 0.5 * gram.diagonal();
    // Full Gram value on i<j pairs; with binary a this reproduces the
    // quadratic term of the expanded objective exactly.
    inst.coupling =
        gram.triangularView<Eigen::StrictlyUpper>().toDenseMatrix();
    inst.offset = 0.5 * x.squaredNorm();
    return inst;
}

double qubo_energy(const QuboInstance& inst, const BinaryState& a) {
    check_state(inst, a, "qubo_energy");
    const Vector ad = a.cast<double>();
    return inst.h.dot(ad) + ad.dot(inst.coupling * ad);
}

double objective_energy(const Dictionary& d, const Vector& x, double lambda,
                        const BinaryState& a) {
    require(x.size() == d.rows(),
            "objective_energy: signal length does not match dictionary rows");
    require(lambda >= 0.0, "objective_energy: penalty must be nonnegative");
    require(a.size() == d.cols(),
            "objective_energy: state length does not match atom count");
    require(is_binary(a), "objective_energy: state has non-binary entries");
    const Vector residual = x - d.atoms() * a.cast<double>();
    return 0.5 * residual.squaredNorm() +
           lambda * static_cast<double>(sparsity(a));
}

Vector reconstruct(const Dictionary& d, const BinaryState& a) {
    require(a.size() == d.cols(),
            "reconstruct: state length " + std::to_string(a.size()) +
                " does not match atom count " + std::to_string(d.cols()));
    require(is_binary(a), "reconstruct: state has non-binary entries");
    return d.atoms() * a.cast<double>();
}

void write_instance(std::ostream& out, const QuboInstance& inst) {
    const Eigen::Index n = inst.size();
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "n " << n << " offset " << inst.offset << "\n";
    for (Eigen::Index i = 0; i < n; ++i)
        out << "h " << i << " " << inst.h[i] << "\n";
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            out << "q " << i << " " << j << " " << inst.coupling(i, j) << "\n";
}

QuboInstance read_instance(std::istream& in) {
    auto fail = [](const std::string& message) -> void {
        throw std::runtime_error("read_instance: " + message);
    };

    std::string tag;
    Eigen::Index n = 0;
    if (!(in >> tag) || tag != "n") fail("expected header token 'n'");
    if (!(in >> n) || n < 1) fail("invalid variable count");
    if (!(in >> tag) || tag != "offset") fail("expected header token 'offset'");

    QuboInstance inst;
    if (!(in >> inst.offset)) fail("invalid offset value");
    inst.h = Vector::Zero(n);
    inst.coupling = Matrix::Zero(n, n);

    std::vector<bool> seen_h(static_cast<std::size_t>(n), false);
    while (in >> tag) {
        if (tag == "h") {
            Eigen::Index i;
            double value;
            if (!(in >> i >> value)) fail("malformed h line");
            if (i < 0 || i >= n) fail("h index out of range");
            inst.h[i] = value;
            seen_h[static_cast<std::size_t>(i)] = true;
        } else if (tag == "q") {
            Eigen::Index i, j;
            double value;
            if (!(in >> i >> j >> value)) fail("malformed q line");
            if (i < 0 || j <= i || j >= n) fail("q indices must satisfy 0 <= i < j < n");
            inst.coupling(i, j) = value;
        } else {
            fail("unknown record '" + tag + "'");
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        if (!seen_h[static_cast<std::size_t>(i)])
            fail("missing h line for variable " + std::to_string(i));
    validate_instance(inst);
    return inst;
}

void save_instance(const QuboInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_instance: cannot open " + path);
    write_instance(out, inst);
}

QuboInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_instance: cannot open " + path);
    return read_instance(in);
}

}  // namespace binsc
