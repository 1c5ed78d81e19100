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

#include "tempcorr/qcore.hpp"

namespace tempcorr {

/// k selects Alice's (first) observable, l Bob's (second).
struct SettingPair {
    int k = 0;
    int l = 0;
};

struct MeasurementScheme {
    Observable a0;
    Observable a1;
    Observable b0;
    Observable b1;

    const Observable& alice(int k) const;
    const Observable& bob(int l) const;

    /// Applies an SO(3) rotation to all four Bloch directions.
    MeasurementScheme rotated(const Eigen::Matrix3d& rotation) const;
};

/// p[r][s] = P(r, s | k, l).
struct JointDistribution {
    std::array<std::array<double, 2>, 2> p{};
    SettingPair setting;

    double sum() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
};

/// c[k][l] = C_{k,l}.
struct CorrelationTable {
    std::array<std::array<double, 2>, 2> c{};
};

/// Projective first measurement with Lueders update, then projective second
/// measurement: P(r,s) = Tr(Pi_s^b Pi_r^a rho Pi_r^a).
JointDistribution luders_joint(const DensityMatrix& rho, const Observable& a, const Observable& b,
                               SettingPair setting = {});

/// Two remote observers: P(r,s) = Tr(rho2 (Pi_r^a (x) Pi_s^b)).
JointDistribution spatial_joint(const DensityMatrix& rho2, const Observable& a, const Observable& b,
                                SettingPair setting = {});

/// sum_{r,s} (-1)^{r+s} P(r,s).
double correlator_from_distribution(const JointDistribution& j);

/// Tr(rho (AB + BA) / 2).
double correlator_anticommutator(const DensityMatrix& rho, const Observable& a, const Observable& b);

double bloch_correlator(const Observable& a, const Observable& b);

}  // namespace tempcorr
