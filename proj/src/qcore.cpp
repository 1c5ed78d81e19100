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

#include "tempcorr/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "tempcorr/errors.hpp"

namespace tempcorr {

namespace {

constexpr double kNumericClamp = 1e-9;

void require_valid_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw DimensionError("density matrices must have dim 2 or 4, got " + std::to_string(dim));
    }
}

StateVector haar_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector psi(dim);
    for (int i = 0; i < dim; ++i) {
        psi[i] = Complex(gauss(rng), gauss(rng));
    }
    return psi / psi.norm();
}

ComplexMatrix haar_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        if (mag > 0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

}  // namespace

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli(int index) {
    ComplexMatrix p(2, 2);
    const Complex i(0, 1);
    switch (index) {
        case 0:
            p << 1, 0, 0, 1;
            break;
        case 1:
            p << 0, 1, 1, 0;
            break;
        case 2:
            p << 0, -i, i, 0;
            break;
        case 3:
            p << 1, 0, 0, -1;
            break;
        default:
            throw DimensionError("pauli index must be in 0..3");
    }
    return p;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = r; c < m.cols(); ++c) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("eigenvalues of a non-square matrix");
    }
    if (m.rows() == 2) {
        double a = m(0, 0).real();
        double d = m(1, 1).real();
        double mean = 0.5 * (a + d);
        double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
        return {mean - radius, mean + radius};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

int outcome_value(int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw InvalidObservable("outcome label must be 0 or 1");
    }
    return outcome == 1 ? +1 : -1;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw InvalidState("density matrix must be square");
    }
    require_valid_dim(dim());
    if (!is_hermitian(matrix_)) {
        throw InvalidState("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > kTolerance) {
        throw InvalidState("density matrix trace differs from 1");
    }
    if (hermitian_eigenvalues(matrix_).front() < -kTolerance) {
        throw InvalidState("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_numeric(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw InvalidState("density matrix must be square");
    }
    require_valid_dim(static_cast<int>(m.rows()));
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    Eigen::VectorXd ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < -kNumericClamp) {
            throw InvalidState("operator is not positive semidefinite");
        }
        if (ev[i] < kTolerance) {
            ev[i] = 0.0;
        }
    }
    double total = ev.sum();
    if (!(total > 0.0)) {
        throw InvalidState("operator has zero trace");
    }
    ev /= total;
    const auto& v = solver.eigenvectors();
    ComplexMatrix out = v * ev.cast<Complex>().asDiagonal() * v.adjoint();
    out = 0.5 * (out + out.adjoint());
    return DensityMatrix(std::move(out), Unchecked{});
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    double n = psi.norm();
    if (n == 0.0) {
        throw InvalidState("zero state vector");
    }
    StateVector u = psi / n;
    return DensityMatrix(u * u.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    require_valid_dim(dim);
    return DensityMatrix(identity(dim) / static_cast<double>(dim), Unchecked{});
}

Observable::Observable(BlochVector bloch, std::string label)
    : bloch_(std::move(bloch)), label_(std::move(label)) {
    if (!bloch_.allFinite() || std::abs(bloch_.norm() - 1.0) > kTolerance) {
        throw InvalidObservable("Bloch vector must have unit norm");
    }
}

ComplexMatrix observable_matrix(const Observable& obs) {
    const BlochVector& n = obs.bloch();
    return n.x() * pauli(1) + n.y() * pauli(2) + n.z() * pauli(3);
}

ComplexMatrix projector(const Observable& obs, int outcome) {
    return 0.5 * (identity(2) + static_cast<double>(outcome_value(outcome)) * observable_matrix(obs));
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.matrix().cwiseAbs2().sum();
}

DensityMatrix random_density(int dim, PurityClass purity_class, std::uint64_t seed) {
    require_valid_dim(dim);
    std::mt19937_64 rng(seed);
    switch (purity_class) {
        case PurityClass::kPure:
            return DensityMatrix::pure(haar_state(dim, rng));
        case PurityClass::kMixed: {
            StateVector psi = haar_state(dim, rng);
            double w = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            ComplexMatrix m = w * psi * psi.adjoint() + (1.0 - w) * identity(dim) / static_cast<double>(dim);
            return DensityMatrix::from_numeric(m);
        }
        case PurityClass::kMaximallyMixedBlend: {
            ComplexMatrix u = haar_unitary(dim, rng);
            std::exponential_distribution<double> expo(1.0);
            Eigen::VectorXd weights(dim);
            for (int i = 0; i < dim; ++i) {
                weights[i] = expo(rng);
            }
            weights /= weights.sum();
            ComplexMatrix m = u * weights.cast<Complex>().asDiagonal() * u.adjoint();
            return DensityMatrix::from_numeric(m);
        }
    }
    throw InvalidState("unknown purity class");
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index rows = a.rows() * b.rows();
    const Eigen::Index cols = a.cols() * b.cols();
    if (rows > 16 || cols > 16) {
        throw DimensionError("tensor product exceeds dimension 16");
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw DimensionError("partial_trace expects a 4x4 operator");
    }
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    // Index = 2 * first + second.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int t = 0; t < 2; ++t) {
                if (keep == Subsystem::kFirst) {
                    out(i, j) += m(2 * i + t, 2 * j + t);
                } else {
                    out(i, j) += m(2 * t + i, 2 * t + j);
                }
            }
        }
    }
    return out;
}

ComplexMatrix frame_rotation(const BlochVector& n) {
    double theta = std::acos(std::clamp(n.z() / n.norm(), -1.0, 1.0));
    double phi = std::atan2(n.y(), n.x());
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    Complex e = std::polar(1.0, -phi);
    // Rows are <n+| and <n-|, phased so that n = +Z gives the identity.
    ComplexMatrix r(2, 2);
    r << c, e * s, -s, e * c;
    return r;
}

Eigen::Matrix3d bloch_rotation(const ComplexMatrix& u) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw DimensionError("bloch_rotation expects a 2x2 unitary");
    }
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r(i, j) = 0.5 * (pauli(i + 1) * u * pauli(j + 1) * u.adjoint()).trace().real();
        }
    }
    return r;
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw DimensionError("Bloch vector of a non-qubit state");
    }
    BlochVector b;
    for (int i = 0; i < 3; ++i) {
        b[i] = (rho.matrix() * pauli(i + 1)).trace().real();
    }
    return b;
}

}  // namespace tempcorr

namespace tempcorr {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace tempcorr
