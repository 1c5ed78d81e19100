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

#include "tempcorr/seqmeas.hpp"

#include <algorithm>

#include "tempcorr/errors.hpp"

namespace tempcorr {

namespace {

// Probabilities coming out of trace formulas can be off by rounding.
double clamp_probability(double p) {
    if (p < 0.0 && p > -kTolerance) {
        return 0.0;
    }
    if (p > 1.0 && p < 1.0 + kTolerance) {
        return 1.0;
    }
    return p;
}

void require_dim(const DensityMatrix& rho, int dim, const char* what) {
    if (rho.dim() != dim) {
        throw DimensionError(std::string(what) + ": expected a state of dim " + std::to_string(dim));
    }
}

}  // namespace

const Observable& MeasurementScheme::alice(int k) const {
    if (k != 0 && k != 1) {
        throw InvalidObservable("setting index must be 0 or 1");
    }
    return k == 0 ? a0 : a1;
}

const Observable& MeasurementScheme::bob(int l) const {
    if (l != 0 && l != 1) {
        throw InvalidObservable("setting index must be 0 or 1");
    }
    return l == 0 ? b0 : b1;
}

MeasurementScheme MeasurementScheme::rotated(const Eigen::Matrix3d& rotation) const {
    auto rot = [&](const Observable& o) {
        BlochVector v = rotation * o.bloch();
        return Observable(v / v.norm(), o.label());
    };
    return {rot(a0), rot(a1), rot(b0), rot(b1)};
}

JointDistribution luders_joint(const DensityMatrix& rho, const Observable& a, const Observable& b,
                               SettingPair setting) {
    require_dim(rho, 2, "luders_joint");
    JointDistribution j;
    j.setting = setting;
    for (int r = 0; r < 2; ++r) {
        ComplexMatrix pa = projector(a, r);
        ComplexMatrix updated = pa * rho.matrix() * pa;
        for (int s = 0; s < 2; ++s) {
            j.p[r][s] = clamp_probability((projector(b, s) * updated).trace().real());
        }
    }
    return j;
}

JointDistribution spatial_joint(const DensityMatrix& rho2, const Observable& a, const Observable& b,
                                SettingPair setting) {
    require_dim(rho2, 4, "spatial_joint");
    JointDistribution j;
    j.setting = setting;
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) {
            ComplexMatrix effect = tensor(projector(a, r), projector(b, s));
            j.p[r][s] = clamp_probability((rho2.matrix() * effect).trace().real());
        }
    }
    return j;
}

double correlator_from_distribution(const JointDistribution& j) {
    return j.p[0][0] + j.p[1][1] - j.p[0][1] - j.p[1][0];
}

double correlator_anticommutator(const DensityMatrix& rho, const Observable& a, const Observable& b) {
    require_dim(rho, 2, "correlator_anticommutator");
    ComplexMatrix ma = observable_matrix(a);
    ComplexMatrix mb = observable_matrix(b);
    ComplexMatrix anti = 0.5 * (ma * mb + mb * ma);
    return (rho.matrix() * anti).trace().real();
}

double bloch_correlator(const Observable& a, const Observable& b) { return a.bloch().dot(b.bloch()); }

}  // namespace tempcorr
