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
#include <cstddef>
#include <cstdint>
#include <vector>

#include "tempcorr/qcore.hpp"
#include "tempcorr/seqmeas.hpp"

namespace tempcorr {

/// Joint distributions for all four setting pairs, indexed [k][l].
using DistributionSet = std::array<std::array<JointDistribution, 2>, 2>;

/// The four probabilities entering Hardy's argument. Field names spell
/// r, s, k, l of P(r,s|k,l).
struct HardyProbabilities {
    double p1111 = 0.0;
    double p1010 = 0.0;
    double p0101 = 0.0;
    double p1100 = 0.0;
};

struct HardyResult {
    HardyProbabilities probabilities;
    double h = 0.0;
};

struct ChshResult {
    CorrelationTable correlations;
    double s = 0.0;
};

/// H = P(1,1|1,1) - P(1,1|0,0) - P(1,0|1,0) - P(0,1|0,1); classical bound 0.
HardyResult hardy_from_probabilities(const HardyProbabilities& p);
HardyResult hardy_from_distributions(const DistributionSet& dists);

/// S = |C00 + C10 + C01 - C11|; classical bound 2.
double chsh_value(const CorrelationTable& table);
ChshResult chsh_from_distributions(const DistributionSet& dists);

/// A0 = B1 = -Z, A1 = B0 = X.
MeasurementScheme preset_hardy_scheme();

/// A0 = Z, A1 = X, B0 = (Z+X)/sqrt2, B1 = (Z-X)/sqrt2.
MeasurementScheme preset_chsh_scheme();

DistributionSet temporal_distributions(const DensityMatrix& rho, const MeasurementScheme& scheme);
DistributionSet spatial_distributions(const DensityMatrix& rho2, const MeasurementScheme& scheme);

HardyResult hardy_evaluate(const DensityMatrix& rho, const MeasurementScheme& scheme);

/// Correlators from the anticommutator expectation.
ChshResult chsh_evaluate(const DensityMatrix& rho, const MeasurementScheme& scheme);

struct ScanReport {
    double min_s = 0.0;
    double max_s = 0.0;
    double spread = 0.0;
    std::size_t samples = 0;
};

/// CHSH with the preset scheme over `n` random qubit states cycling through
/// pure, mixed and spectral-mixture classes. Sample i uses split_seed(seed, i).
ScanReport state_independence_scan(std::size_t n, std::uint64_t seed);

HardyResult spatial_hardy_evaluate(const DensityMatrix& rho2, const MeasurementScheme& scheme);

// ---------------------------------------------------------------------------
// Spatial Hardy maximization.
//
// All measurement directions live in the x-z plane and the state is
// cos(t)|00> + sin(t)|11>. Two search manifolds are offered:
//
//  kParadox: the three zero-conditions of Hardy's argument hold exactly.
//    Parameters are (t, a0 angle); b0, a1 and b1 are the unique directions
//    that null P(1,1|0,0), P(1,0|1,0) and P(0,1|0,1). H then equals
//    P(1,1|1,1) and its maximum is (5 sqrt5 - 11)/2.
//  kUnconstrained: parameters are (t, a0, a1, b0, b1) angles and H is
//    maximized freely. Its maximum is (sqrt2 - 1)/2.

enum class HardyManifold { kParadox, kUnconstrained };

struct SpatialHardyOptions {
    int restarts = 200;
    std::uint64_t seed = 1;
    double tolerance = 1e-8;
    HardyManifold manifold = HardyManifold::kParadox;
    /// Pins the Schmidt angle to 0.
    bool product_states_only = false;
    /// Upper bound on ascent sweeps per restart.
    int max_sweeps = 200000;
};

struct SpatialHardyOptimum {
    double h_max = 0.0;
    /// Schmidt angle first, then the manifold's measurement angles.
    std::vector<double> parameters;
    StateVector state;
    MeasurementScheme scheme = preset_hardy_scheme();
    HardyResult result;
    bool converged = true;
};

/// State and scheme for a parameter vector on the given manifold.
std::pair<StateVector, MeasurementScheme> spatial_hardy_point(const std::vector<double>& parameters,
                                                              HardyManifold manifold);

/// A single coordinate ascent from `start`: first improvement, step halving
/// from 0.1 rad down to `options.tolerance`.
SpatialHardyOptimum spatial_hardy_ascend(std::vector<double> start, const SpatialHardyOptions& options);

/// Multi-start ascent. Restart i starts from a point drawn with
/// split_seed(options.seed, i); restarts run concurrently.
SpatialHardyOptimum spatial_hardy_maximize(const SpatialHardyOptions& options);

}  // namespace tempcorr
