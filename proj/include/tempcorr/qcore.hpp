// Copyright 2026 The tempcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tempcorr {

using Complex = std::complex<double>;
/// Dense operator on 1, 2 or 4 qubits (dim 2, 4 or 16), row-major semantics.
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using BlochVector = Eigen::Vector3d;

inline constexpr double kTolerance = 1e-12;

ComplexMatrix identity(int dim);

/// Single-qubit Pauli matrix: 0 = I, 1 = X, 2 = Y, 3 = Z.
ComplexMatrix pauli(int index);

bool is_hermitian(const ComplexMatrix& m, double tol = kTolerance);

/// Eigenvalues of a Hermitian matrix in ascending order. 2x2 is closed form.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Outcome label to eigenvalue: 1 -> +1, 0 -> -1.
int outcome_value(int outcome);

/// Validated density operator on one or two qubits.
class DensityMatrix {
   public:
    /// Throws InvalidState unless `m` is Hermitian, unit trace and positive
    /// (all within 1e-12) with dim 2 or 4.
    explicit DensityMatrix(ComplexMatrix m);

    /// For matrices produced by upstream numerics: hermitizes, clamps
    /// eigenvalues in [-1e-9, 1e-12) to zero and renormalizes the trace.
    static DensityMatrix from_numeric(const ComplexMatrix& m);
    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(int dim);

    const ComplexMatrix& matrix() const { return matrix_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

   private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix m, Unchecked) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

/// Dichotomic qubit observable n.sigma with a unit Bloch direction n.
class Observable {
   public:
    explicit Observable(BlochVector bloch, std::string label = {});

    const BlochVector& bloch() const { return bloch_; }
    const std::string& label() const { return label_; }

   private:
    BlochVector bloch_;
    std::string label_;
};

ComplexMatrix observable_matrix(const Observable& obs);

/// (I + v(outcome) n.sigma) / 2.
ComplexMatrix projector(const Observable& obs, int outcome);

double purity(const DensityMatrix& rho);

enum class PurityClass {
    kPure,
    /// w |psi><psi| + (1 - w) I/dim with w ~ U[0,1].
    kMixed,
    /// Haar-random eigenbasis with flat-Dirichlet spectrum.
    kMaximallyMixedBlend,
};

/// Deterministic in `seed`. Pure states are Haar distributed.
DensityMatrix random_density(int dim, PurityClass purity_class, std::uint64_t seed);

/// Kronecker product; the first factor is the most significant index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kFirst, kSecond };

/// Partial trace of a 4x4 operator keeping one qubit.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep);

/// Unitary R with R (n.sigma) R^dagger = Z.
ComplexMatrix frame_rotation(const BlochVector& n);

/// SO(3) action of a single-qubit unitary on Bloch vectors:
/// U (n.sigma) U^dagger = (R n).sigma.
Eigen::Matrix3d bloch_rotation(const ComplexMatrix& u);

/// Bloch vector of a single-qubit density matrix.
BlochVector bloch_vector(const DensityMatrix& rho);

}  // namespace tempcorr

namespace tempcorr {

/// Per-stream seed derivation: splitmix64 finalizer applied to
/// master + 0x9e3779b97f4a7c15 * (index + 1).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace tempcorr
