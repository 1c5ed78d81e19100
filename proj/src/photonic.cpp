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

#include "tempcorr/photonic.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "tempcorr/errors.hpp"

namespace tempcorr {

namespace {

// Polarization index: 0 = H, 1 = V.
constexpr int kInterfering = 1;

StateVector diagonal_state(int sign) {
    StateVector v(2);
    v << std::numbers::sqrt2 / 2, sign * std::numbers::sqrt2 / 2;
    return v;
}

void require_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(std::string(what) + " must lie in [0, 1]");
    }
}

}  // namespace

ComplexMatrix cz_unitary() {
    ComplexMatrix u = identity(4);
    u(3, 3) = -1.0;
    return u;
}

double PostselectedGate::success_probability(const DensityMatrix& rho2) const {
    if (rho2.dim() != 4) {
        throw DimensionError("success_probability expects a two-qubit state");
    }
    return (op * rho2.matrix() * op.adjoint()).trace().real();
}

PostselectedGate ppbs_gate(const PpbsConfig& config) {
    require_unit_interval(config.eta_interfering, "eta_interfering");
    require_unit_interval(config.eta_pass, "eta_pass");
    std::array<double, 2> eta{};
    eta[kInterfering] = config.eta_interfering;
    eta[1 - kInterfering] = config.eta_pass;
    std::array<double, 2> t{}, r{}, filter{};
    for (int p = 0; p < 2; ++p) {
        t[p] = std::sqrt(eta[p]);
        r[p] = std::sqrt(1.0 - eta[p]);
        filter[p] = 1.0;
    }
    if (config.compensation) {
        filter[1 - kInterfering] = std::sqrt(config.eta_interfering);
    }

    PostselectedGate gate;
    gate.op = ComplexMatrix::Zero(4, 4);
    for (int p = 0; p < 2; ++p) {      // signal input polarization
        for (int q = 0; q < 2; ++q) {  // meter input polarization
            int in = 2 * p + q;
            // Both transmitted: signal stays in arm 0, meter in arm 1.
            gate.op(2 * p + q, in) += t[p] * t[q] * filter[p] * filter[q];
            // Both reflected, (i r)(i r) = -r r: the meter photon now occupies arm 0.
            gate.op(2 * q + p, in) += -r[p] * r[q] * filter[q] * filter[p];
        }
    }
    gate.unbalanced = config.eta_interfering > config.eta_pass;
    return gate;
}

ComplexMatrix pauli_product(int m) {
    if (m < 0 || m >= 16) {
        throw DimensionError("Pauli product index must be in 0..15");
    }
    return tensor(pauli(m / 4), pauli(m % 4));
}

ProcessMatrix::ProcessMatrix(ComplexMatrix chi) : chi_(std::move(chi)) {
    if (chi_.rows() != 16 || chi_.cols() != 16) {
        throw DimensionError("chi matrix must be 16x16");
    }
    if (!is_hermitian(chi_)) {
        throw Error("chi matrix is not Hermitian");
    }
    if (std::abs(chi_.trace() - Complex(1.0)) > kTolerance) {
        throw Error("chi matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(chi_);
    for (int i = 0; i < 16; ++i) {
        double lambda = solver.eigenvalues()[i];
        if (lambda <= kTolerance) {
            continue;
        }
        ComplexMatrix k = ComplexMatrix::Zero(4, 4);
        for (int m = 0; m < 16; ++m) {
            k += solver.eigenvectors()(m, i) * pauli_product(m);
        }
        kraus_.push_back(std::sqrt(lambda) * k);
    }
}

bool ProcessMatrix::is_completely_positive(double tol) const {
    return hermitian_eigenvalues(chi_).front() >= -tol;
}

ComplexMatrix ProcessMatrix::apply(const ComplexMatrix& rho4) const {
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (const auto& k : kraus_) {
        out += k * rho4 * k.adjoint();
    }
    return out;
}

ProcessMatrix chi_from_unitary(const ComplexMatrix& u) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw DimensionError("chi_from_unitary expects a 4x4 unitary");
    }
    if ((u.adjoint() * u - identity(4)).cwiseAbs().maxCoeff() > 1e-10) {
        throw NonUnitaryError("chi_from_unitary: input is not unitary");
    }
    Eigen::VectorXcd a(16);
    for (int m = 0; m < 16; ++m) {
        a[m] = (pauli_product(m).adjoint() * u).trace() / 4.0;
    }
    ComplexMatrix chi = a * a.adjoint() / a.squaredNorm();
    chi = 0.5 * (chi + chi.adjoint());
    return ProcessMatrix(chi);
}

ProcessMatrix depolarize(const ProcessMatrix& chi, double weight) {
    require_unit_interval(weight, "depolarization weight");
    return ProcessMatrix((1.0 - weight) * chi.chi() + weight * identity(16) / 16.0);
}

double depolarization_for_fidelity(double fidelity) {
    if (!(fidelity >= 1.0 / 16.0 && fidelity <= 1.0)) {
        throw Error("fidelity must lie in [1/16, 1]");
    }
    return (1.0 - fidelity) / (1.0 - 1.0 / 16.0);
}

double process_purity(const ProcessMatrix& chi) { return chi.chi().cwiseAbs2().sum(); }

double process_fidelity(const ProcessMatrix& chi, const ProcessMatrix& chi_ideal) {
    std::vector<double> ev = hermitian_eigenvalues(chi_ideal.chi());
    if (ev[ev.size() - 2] > 1e-10) {
        throw UnsupportedFidelity("process fidelity needs a rank-1 target process");
    }
    return (chi.chi() * chi_ideal.chi()).trace().real();
}

void NoiseModel::validate() const {
    require_unit_interval(visibility, "visibility");
    require_unit_interval(depolarization, "depolarization");
}

CorrelationTable apply_visibility(const CorrelationTable& table, double visibility) {
    require_unit_interval(visibility, "visibility");
    CorrelationTable out = table;
    for (auto& row : out.c) {
        for (double& c : row) {
            c *= visibility;
        }
    }
    return out;
}

JointDistribution apply_visibility(const JointDistribution& dist, double visibility) {
    require_unit_interval(visibility, "visibility");
    JointDistribution out = dist;
    for (auto& row : out.p) {
        for (double& p : row) {
            p = visibility * p + (1.0 - visibility) / 4.0;
        }
    }
    return out;
}

DistributionSet apply_visibility(const DistributionSet& dists, double visibility) {
    DistributionSet out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            out[k][l] = apply_visibility(dists[k][l], visibility);
        }
    }
    return out;
}

TwoQubitMap gate_map(const ComplexMatrix& op) {
    if (op.rows() != 4 || op.cols() != 4) {
        throw DimensionError("gate operator must be 4x4");
    }
    return [op](const ComplexMatrix& rho) -> ComplexMatrix { return op * rho * op.adjoint(); };
}

TwoQubitMap gate_map(const PostselectedGate& gate) { return gate_map(gate.op); }

TwoQubitMap gate_map(const ProcessMatrix& chi) {
    return [chi](const ComplexMatrix& rho) { return chi.apply(rho); };
}

MeterOutcome meter_measure(const DensityMatrix& rho, const Observable& setting, const TwoQubitMap& gate) {
    if (rho.dim() != 2) {
        throw DimensionError("meter_measure expects a signal qubit state");
    }
    const ComplexMatrix frame = frame_rotation(setting.bloch());
    const ComplexMatrix rotated = frame * rho.matrix() * frame.adjoint();
    const DensityMatrix meter = DensityMatrix::pure(diagonal_state(+1));
    const ComplexMatrix out = gate(tensor(rotated, meter.matrix()));

    MeterOutcome result;
    result.herald_probability = out.trace().real();
    if (!(result.herald_probability > kTolerance)) {
        throw InvalidState("gate never heralds on this input");
    }
    // r = 1 <-> meter unchanged (|D>), r = 0 <-> meter flipped to |A>.
    for (int r = 0; r < 2; ++r) {
        StateVector m = diagonal_state(r == 1 ? +1 : -1);
        ComplexMatrix meter_proj = m * m.adjoint();
        ComplexMatrix signal = partial_trace(out * tensor(identity(2), meter_proj), Subsystem::kFirst);
        signal = frame.adjoint() * signal * frame;
        double p = signal.trace().real() / result.herald_probability;
        if (p < kTolerance) {
            result.probabilities[r] = std::max(p, 0.0);
            result.post_states[r] = DensityMatrix::maximally_mixed(2);
        } else {
            result.probabilities[r] = p;
            result.post_states[r] = DensityMatrix::from_numeric(signal);
        }
    }
    return result;
}

JointDistribution meter_joint(const DensityMatrix& rho, const Observable& a, const Observable& b,
                              const TwoQubitMap& gate, SettingPair setting) {
    MeterOutcome first = meter_measure(rho, a, gate);
    JointDistribution j;
    j.setting = setting;
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) {
            double second = (projector(b, s) * first.post_states[r].matrix()).trace().real();
            j.p[r][s] = first.probabilities[r] * second;
        }
    }
    return j;
}

DistributionSet meter_distributions(const DensityMatrix& rho, const MeasurementScheme& scheme,
                                    const TwoQubitMap& gate) {
    DistributionSet d;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            d[k][l] = meter_joint(rho, scheme.alice(k), scheme.bob(l), gate, {k, l});
        }
    }
    return d;
}

ProcessPrediction predict_from_process(const ProcessMatrix& chi, const MeasurementScheme& scheme,
                                       const std::vector<DensityMatrix>& states) {
    if (!chi.is_completely_positive()) {
        throw NotCompletelyPositive("chi matrix has a negative eigenvalue");
    }
    const TwoQubitMap map = gate_map(chi);
    ProcessPrediction out;
    out.s_per_state.reserve(states.size());
    for (const auto& rho : states) {
        out.s_per_state.push_back(chsh_from_distributions(meter_distributions(rho, scheme, map)).s);
    }
    if (!states.empty()) {
        double total = 0.0;
        for (double s : out.s_per_state) {
            total += s;
        }
        out.s_avg = total / static_cast<double>(states.size());
    }
    StateVector h(2);
    h << 1, 0;
    out.hardy = hardy_from_distributions(meter_distributions(DensityMatrix::pure(h), preset_hardy_scheme(), map));
    return out;
}

}  // namespace tempcorr
