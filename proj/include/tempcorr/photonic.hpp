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

#include <array>
#include <functional>
#include <vector>

#include "tempcorr/inequalities.hpp"
#include "tempcorr/qcore.hpp"
#include "tempcorr/seqmeas.hpp"

namespace tempcorr {

/// Controlled-phase in the {HH, HV, VH, VV} basis, signal first: diag(1,1,1,-1).
ComplexMatrix cz_unitary();

/// Partially polarizing beamsplitter. The interfering polarization is V.
struct PpbsConfig {
    double eta_interfering = 1.0 / 3.0;
    double eta_pass = 1.0;
    /// Balancing attenuators of amplitude sqrt(eta_interfering) on the pass
    /// polarization in each output arm.
    bool compensation = true;
};

/// Two-photon operator conditioned on one photon in each PPBS output arm.
struct PostselectedGate {
    ComplexMatrix op;
    /// Set when eta_interfering > eta_pass.
    bool unbalanced = false;

    double success_probability(const DensityMatrix& rho2) const;
};

/// Transmission amplitude sqrt(eta), reflection i sqrt(1 - eta). The signal
/// enters one input port and the meter the other; output arm 0 is read as the
/// signal and arm 1 as the meter. Both-transmitted contributes t_p t_q on
/// |p q>, both-reflected contributes -r_p r_q on the swapped |q p>.
PostselectedGate ppbs_gate(const PpbsConfig& config);

/// Chi matrix over the Pauli products P_m = sigma_{m/4} (x) sigma_{m%4}
/// (I, X, Y, Z ordering), trace-1 normalization. Construction checks
/// Hermiticity and trace; complete positivity is checked where required.
class ProcessMatrix {
   public:
    explicit ProcessMatrix(ComplexMatrix chi);

    const ComplexMatrix& chi() const { return chi_; }
    bool is_completely_positive(double tol = 1e-10) const;

    /// E(rho) = sum_mn chi_mn P_m rho P_n.
    ComplexMatrix apply(const ComplexMatrix& rho4) const;

   private:
    ComplexMatrix chi_;
    std::vector<ComplexMatrix> kraus_;
};

/// P_m for m in [0, 16).
ComplexMatrix pauli_product(int m);

ProcessMatrix chi_from_unitary(const ComplexMatrix& u);

/// (1 - weight) chi + weight I/16.
ProcessMatrix depolarize(const ProcessMatrix& chi, double weight);

/// White-noise weight that brings a rank-1 process to the given fidelity.
double depolarization_for_fidelity(double fidelity);

double process_purity(const ProcessMatrix& chi);

/// Tr(chi chi_ideal). Throws UnsupportedFidelity when chi_ideal is not rank 1.
double process_fidelity(const ProcessMatrix& chi, const ProcessMatrix& chi_ideal);

struct NoiseModel {
    double visibility = 1.0;
    double depolarization = 0.0;

    void validate() const;
};

/// Every correlator scaled by v.
CorrelationTable apply_visibility(const CorrelationTable& table, double visibility);

/// P -> v P + (1 - v)/4.
JointDistribution apply_visibility(const JointDistribution& dist, double visibility);
DistributionSet apply_visibility(const DistributionSet& dists, double visibility);

/// Unnormalized action on a signal (x) meter density operator.
using TwoQubitMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

TwoQubitMap gate_map(const ComplexMatrix& op);
TwoQubitMap gate_map(const PostselectedGate& gate);
TwoQubitMap gate_map(const ProcessMatrix& chi);

/// Indexed by outcome label r. The meter left in |D> reads r = 1.
struct MeterOutcome {
    std::array<double, 2> probabilities{};
    std::array<DensityMatrix, 2> post_states{DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2)};
    /// Trace of the gate output; 1/9 for the canonical PPBS.
    double herald_probability = 1.0;
};

/// Meter in |D>, signal rotated so `setting` maps to Z, gate applied, meter
/// projected on {|D>, |A>}, signal rotated back. Outcome probabilities are
/// conditioned on heralding. A zero-probability branch carries I/2.
MeterOutcome meter_measure(const DensityMatrix& rho, const Observable& setting, const TwoQubitMap& gate);

/// meter_measure for the first measurement, ideal projective second.
JointDistribution meter_joint(const DensityMatrix& rho, const Observable& a, const Observable& b,
                              const TwoQubitMap& gate, SettingPair setting = {});

DistributionSet meter_distributions(const DensityMatrix& rho, const MeasurementScheme& scheme,
                                    const TwoQubitMap& gate);

struct ProcessPrediction {
    std::vector<double> s_per_state;
    double s_avg = 0.0;
    /// Preset Hardy scheme on |H>.
    HardyResult hardy;
};

/// Throws NotCompletelyPositive for chi with eigenvalues below -1e-10.
ProcessPrediction predict_from_process(const ProcessMatrix& chi, const MeasurementScheme& scheme,
                                       const std::vector<DensityMatrix>& states);

}  // namespace tempcorr
