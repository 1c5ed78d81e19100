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
#include <cstdint>

#include "tempcorr/inequalities.hpp"

namespace tempcorr {

using CellCounts = std::array<std::array<std::uint64_t, 2>, 2>;

/// Coincidence counts indexed [k][l][r][s].
struct CountRecord {
    std::array<std::array<CellCounts, 2>, 2> counts{};
    /// Mean coincidences per setting pair used to draw the counts.
    double expected_total = 0.0;

    std::uint64_t setting_total(int k, int l) const;
};

struct ProbabilityEstimate {
    std::array<std::array<double, 2>, 2> p{};
    std::array<std::array<double, 2>, 2> sigma{};
    /// Some cell sits at 0 or 1, where first-order propagation gives sigma = 0.
    bool boundary = false;
};

using EstimateSet = std::array<std::array<ProbabilityEstimate, 2>, 2>;

/// n_sigma = (value - bound) / sigma; NaN when sigma is 0.
struct EstimateWithError {
    double value = 0.0;
    double sigma = 0.0;
    double bound = 0.0;
    double n_sigma = 0.0;
};

/// Each cell independently Poisson with mean mean_total * P(r,s|k,l).
/// Cells are drawn in k, l, r, s order from one mt19937_64(seed) stream.
CountRecord sample_counts(const DistributionSet& dists, double mean_total, std::uint64_t seed);

/// p = n / N per setting, sigma = sqrt(p (1 - p) / N) from first-order
/// propagation of independent Poisson cells through the ratio.
EstimateSet estimate_probabilities(const CountRecord& record);

/// Independent errors added in quadrature.
EstimateWithError propagate_hardy(const HardyProbabilities& probs, const HardyProbabilities& sigmas,
                                  double bound = 0.0);

EstimateWithError propagate_chsh(double value, double sigma, double bound = 2.0);

/// Point estimates of the inequality quantities from counts, with
/// first-order errors. The CHSH sigma combines the four correlator errors
/// sqrt((1 - C^2)/N) in quadrature.
EstimateWithError hardy_from_counts(const CountRecord& record, double bound = 0.0);
EstimateWithError chsh_from_counts(const CountRecord& record, double bound = 2.0);

enum class Quantity { kHardy, kChsh };

struct MonteCarloSummary {
    double mean = 0.0;
    double empirical_sigma = 0.0;
    int trials = 0;
};

/// Welford accumulator.
class RunningStats {
   public:
    void push(double x);
    void merge(const RunningStats& other);

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance.
    double variance() const;

   private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Repeats sample -> estimate -> evaluate. Trial i draws with
/// split_seed(seed, i); trials run concurrently and are reduced in index order.
MonteCarloSummary monte_carlo_resample(const DistributionSet& dists, double mean_total, int trials,
                                       std::uint64_t seed, Quantity quantity);

}  // namespace tempcorr
