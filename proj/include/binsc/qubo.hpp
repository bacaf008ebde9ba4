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

#ifndef BINSC_QUBO_HPP
#define BINSC_QUBO_HPP

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace binsc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Binary activation vector over {0,1}; entry i switches dictionary atom i
/// on or off. Variable 0 is element 0.
using BinaryState = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

/// Number of active variables (the L0 count, which equals the L1 norm for
/// binary vectors).
inline Eigen::Index sparsity(const BinaryState& a) {
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) count += (a[i] != 0);
    return count;
}

/// True iff every entry is exactly 0 or 1.
bool is_binary(const BinaryState& a);

/// Parses a 0/1 string (variable 0 leftmost) into a BinaryState.
BinaryState state_from_string(const std::string& bits);

/// Renders a BinaryState as a 0/1 string, variable 0 leftmost.
std::string state_to_string(const BinaryState& a);

/// Feature dictionary: m x n real matrix whose columns are the atoms.
/// Columns are deliberately unnormalized; only strictly positive column
/// norms and finite entries are required.
class Dictionary {
  public:
    explicit Dictionary(Matrix atoms);

    const Matrix& atoms() const { return atoms_; }
    Eigen::Index rows() const { return atoms_.rows(); }  // signal dimension m
    Eigen::Index cols() const { return atoms_.cols(); }  // atom count n

  private:
    Matrix atoms_;
};

/// QUBO coefficients for one sparse-coding problem:
///
///   energy(a) = sum_i h[i] a_i + sum_{i<j} coupling(i,j) a_i a_j
///
/// `coupling` is strictly upper triangular (diagonal and lower triangle are
/// all zero). `offset` holds the constant 0.5 * x^T x dropped from the
/// quadratic form, so offset + energy(a) reproduces the original objective.
struct QuboInstance {
    Vector h;
    Matrix coupling;
    double offset = 0.0;

    Eigen::Index size() const { return h.size(); }

    /// Symmetric coupling lookup; zero on the diagonal.
    double coupling_between(Eigen::Index i, Eigen::Index j) const {
        if (i == j) return 0.0;
        return i < j ? coupling(i, j) : coupling(j, i);
    }
};

/// Throws std::invalid_argument unless h/coupling shapes agree and the
/// coupling table is strictly upper triangular with finite entries.
void validate_instance(const QuboInstance& inst);

/// Builds the QUBO equivalent of the sparse-coding objective
///
///   0.5 * ||x - D a||^2 + lambda * sum_i a_i
///
/// with h[i] = -D_i.x + lambda + 0.5 * D_i.D_i, coupling(i,j) = D_i.D_j for
/// i < j, and offset = 0.5 * x.x. The coupling carries the full Gram value
/// (no 1/2) so that offset + qubo_energy equals objective_energy exactly.
QuboInstance build_qubo(const Dictionary& d, const Vector& x, double lambda);

/// build_qubo on a raw atom matrix. Unlike the Dictionary-typed overload
/// this tolerates zero-norm columns, which the learning loop may pass
/// through transiently; the coefficients stay finite either way.
QuboInstance build_qubo(const Matrix& atoms, const Vector& x, double lambda);

/// Quadratic-form energy sum_i h[i] a_i + sum_{i<j} coupling(i,j) a_i a_j.
/// The stored offset is NOT added; callers add it when comparing against
/// objective_energy.
double qubo_energy(const QuboInstance& inst, const BinaryState& a);

/// Original objective 0.5 * ||x - D a||^2 + lambda * sparsity(a).
double objective_energy(const Dictionary& d, const Vector& x, double lambda,
                        const BinaryState& a);

/// Reconstruction D a, i.e. the sum of the active atoms.
Vector reconstruct(const Dictionary& d, const BinaryState& a);

/// Plain-text round trip for QuboInstance. Format:
///   n <n> offset <offset>
///   h <i> <value>            one line per variable
///   q <i> <j> <value>        one line per pair, 0-based, i < j
/// Values are written with 17 significant digits so doubles survive intact.
void write_instance(std::ostream& out, const QuboInstance& inst);
QuboInstance read_instance(std::istream& in);
void save_instance(const QuboInstance& inst, const std::string& path);
QuboInstance load_instance(const std::string& path);

}  // namespace binsc

#endif  // BINSC_QUBO_HPP
