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

#include "tempcorr/stats.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "tempcorr/errors.hpp"

using namespace tempcorr;

namespace {

constexpr double kTsirelson = 2 * std::numbers::sqrt2;

DistributionSet uniform() {
    DistributionSet d;
    for (auto& row : d)
        for (auto& j : row) j.p = {{{0.25, 0.25}, {0.25, 0.25}}};
    return d;
}

DistributionSet ideal_chsh() {
    return temporal_distributions(DensityMatrix::maximally_mixed(2), preset_chsh_scheme());
}

DistributionSet ideal_hardy() {
    StateVector h = StateVector::Zero(2);
    h[0] = 1;
    return temporal_distributions(DensityMatrix::pure(h), preset_hardy_scheme());
}

const HardyProbabilities kMeasured{0.2372, 0.0190, 0.0070, 0.0181};
const HardyProbabilities kMeasuredSigma{0.0040, 0.0013, 0.0005, 0.0008};

}  // namespace

TEST(stats, sample_counts_zero_mean) {
    auto rec = sample_counts(uniform(), 0.0, 3);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) EXPECT_EQ(rec.setting_total(k, l), 0u);
    EXPECT_THROW(estimate_probabilities(rec), UndefinedEstimate);
    EXPECT_THROW(sample_counts(uniform(), -1.0, 3), Error);
}

TEST(stats, sample_counts_zero_probability_cells_stay_empty) {
    auto rec = sample_counts(ideal_hardy(), 1e5, 11);
    EXPECT_EQ(rec.counts[0][0][1][1], 0u);
    EXPECT_EQ(rec.counts[1][0][1][0], 0u);
    EXPECT_EQ(rec.counts[0][1][0][1], 0u);
    EXPECT_GT(rec.counts[1][1][1][1], 0u);
}

TEST(stats, sample_counts_is_deterministic) {
    auto a = sample_counts(uniform(), 1e4, 77);
    auto b = sample_counts(uniform(), 1e4, 77);
    auto c = sample_counts(uniform(), 1e4, 78);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, c.counts);
}

TEST(stats, sample_counts_means) {
    RunningStats cell;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        cell.push(static_cast<double>(sample_counts(uniform(), 1e4, seed).counts[1][0][0][1]));
    }
    // Poisson with mean 2500: variance 2500 as well.
    EXPECT_NEAR(cell.mean(), 2500.0, 5 * 50 / std::sqrt(400.0));
    EXPECT_NEAR(cell.variance(), 2500.0, 2500.0 * 0.25);
}

TEST(stats, estimate_uniform) {
    CountRecord rec;
    for (auto& row : rec.counts)
        for (auto& cell : row) cell = {{{250000, 250000}, {250000, 250000}}};
    auto est = estimate_probabilities(rec);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            EXPECT_FALSE(est[k][l].boundary);
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) {
                    EXPECT_DOUBLE_EQ(est[k][l].p[r][s], 0.25);
                    EXPECT_NEAR(est[k][l].sigma[r][s], 4.33e-4, 1e-6);
                }
        }
}

TEST(stats, estimate_boundary) {
    CountRecord rec;
    for (auto& row : rec.counts)
        for (auto& cell : row) cell = {{{10, 0}, {0, 0}}};
    auto est = estimate_probabilities(rec);
    EXPECT_TRUE(est[0][0].boundary);
    EXPECT_EQ(est[0][0].p[0][0], 1.0);
    EXPECT_EQ(est[0][0].sigma[0][0], 0.0);
    EXPECT_EQ(est[0][0].sigma[1][1], 0.0);
}

TEST(stats, propagate_hardy_measured) {
    auto e = propagate_hardy(kMeasured, kMeasuredSigma);
    EXPECT_NEAR(e.value, 0.1931, 1e-12);
    EXPECT_NEAR(e.sigma, 0.0043105, 1e-6);
    EXPECT_NEAR(e.n_sigma, 44.8, 0.05);
    EXPECT_EQ(e.bound, 0.0);

    auto vs_spatial = propagate_hardy(kMeasured, kMeasuredSigma, 0.0902);
    EXPECT_NEAR(vs_spatial.n_sigma, 23.87, 0.01);
}

TEST(stats, propagate_hardy_single_term) {
    auto e = propagate_hardy({0.25, 0, 0, 0}, {0.01, 0, 0, 0});
    EXPECT_NEAR(e.value, 0.25, 1e-15);
    EXPECT_NEAR(e.sigma, 0.01, 1e-15);
    EXPECT_NEAR(e.n_sigma, 25.0, 1e-12);

    auto degenerate = propagate_hardy({0.25, 0, 0, 0}, {0, 0, 0, 0});
    EXPECT_TRUE(std::isnan(degenerate.n_sigma));
    EXPECT_THROW(propagate_hardy(kMeasured, {-0.1, 0, 0, 0}), Error);
}

TEST(stats, propagate_chsh_examples) {
    EXPECT_NEAR(propagate_chsh(2.58, 0.03).n_sigma, 19.333333333, 1e-8);
    EXPECT_EQ(propagate_chsh(2.0, 0.7).n_sigma, 0.0);
    EXPECT_NEAR(propagate_chsh(kTsirelson, 0.03).n_sigma, 27.61, 0.01);
    EXPECT_THROW(propagate_chsh(2.5, 0.0), Error);
}

TEST(stats, n_sigma_translation_invariant) {
    for (double b : {-1.0, 0.0, 0.05, 0.0902, 0.3}) {
        auto at_zero = propagate_hardy(kMeasured, kMeasuredSigma);
        auto at_b = propagate_hardy(kMeasured, kMeasuredSigma, b);
        EXPECT_NEAR(at_b.n_sigma, at_zero.n_sigma - b / at_zero.sigma, 1e-10);
        auto c0 = propagate_chsh(2.58, 0.03, 0.0);
        auto cb = propagate_chsh(2.58, 0.03, b);
        EXPECT_NEAR(cb.n_sigma, c0.n_sigma - b / 0.03, 1e-10);
    }
}

TEST(stats, counts_to_estimates) {
    auto rec = sample_counts(ideal_chsh(), 1e6, 5);
    auto s = chsh_from_counts(rec);
    EXPECT_NEAR(s.value, kTsirelson, 6 * s.sigma);
    EXPECT_NEAR(s.sigma, std::sqrt(4 * 0.5 / 1e6), 2e-5);

    auto h = hardy_from_counts(sample_counts(ideal_hardy(), 1e6, 5));
    EXPECT_NEAR(h.value, 0.25, 6 * h.sigma);
    EXPECT_NEAR(h.sigma, std::sqrt(0.25 * 0.75 / 1e6), 2e-5);
}

TEST(stats, running_stats_merge) {
    RunningStats all, left, right;
    for (int i = 0; i < 100; ++i) {
        double x = std::sin(i * 0.7) * 3 + i * 0.01;
        all.push(x);
        (i < 37 ? left : right).push(x);
    }
    left.merge(right);
    EXPECT_EQ(left.count(), all.count());
    EXPECT_NEAR(left.mean(), all.mean(), 1e-12);
    EXPECT_NEAR(left.variance(), all.variance(), 1e-12);
    RunningStats empty;
    empty.merge(all);
    EXPECT_EQ(empty.mean(), all.mean());
}

TEST(stats, monte_carlo_deterministic) {
    auto a = monte_carlo_resample(ideal_chsh(), 1e5, 50, 123, Quantity::kChsh);
    auto b = monte_carlo_resample(ideal_chsh(), 1e5, 50, 123, Quantity::kChsh);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.empirical_sigma, b.empirical_sigma);
    EXPECT_EQ(a.trials, 50);
    EXPECT_THROW(monte_carlo_resample(ideal_chsh(), 1e5, 1, 123, Quantity::kChsh), Error);
}

TEST(stats, monte_carlo_matches_first_order) {
    auto hardy = monte_carlo_resample(ideal_hardy(), 1e6, 400, 9, Quantity::kHardy);
    double first_order = std::sqrt(0.25 * 0.75 / 1e6);
    EXPECT_NEAR(hardy.empirical_sigma, first_order, 0.2 * first_order);
    EXPECT_NEAR(hardy.mean, 0.25, 5 * first_order / std::sqrt(400.0) + 1e-3);

    auto small = monte_carlo_resample(ideal_chsh(), 1e4, 400, 9, Quantity::kChsh);
    auto large = monte_carlo_resample(ideal_chsh(), 1e6, 400, 9, Quantity::kChsh);
    EXPECT_NEAR(small.empirical_sigma / large.empirical_sigma, 10.0, 2.0);
}
