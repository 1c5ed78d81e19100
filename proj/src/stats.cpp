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
#include <future>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "tempcorr/errors.hpp"

namespace tempcorr {

namespace {

double ratio_or_nan(double num, double den) {
    return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::uint64_t CountRecord::setting_total(int k, int l) const {
    const CellCounts& c = counts.at(k).at(l);
    return c[0][0] + c[0][1] + c[1][0] + c[1][1];
}

CountRecord sample_counts(const DistributionSet& dists, double mean_total, std::uint64_t seed) {
    if (!(mean_total >= 0.0)) {
        throw Error("mean_total must be non-negative");
    }
    CountRecord rec;
    rec.expected_total = mean_total;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            for (int r = 0; r < 2; ++r) {
                for (int s = 0; s < 2; ++s) {
                    double mean = mean_total * std::max(dists[k][l].p[r][s], 0.0);
                    if (mean > 0.0) {
                        std::poisson_distribution<std::uint64_t> poisson(mean);
                        rec.counts[k][l][r][s] = poisson(rng);
                    }
                }
            }
        }
    }
    return rec;
}

EstimateSet estimate_probabilities(const CountRecord& record) {
    EstimateSet out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            const double total = static_cast<double>(record.setting_total(k, l));
            if (total <= 0.0) {
                throw UndefinedEstimate("no counts for setting (" + std::to_string(k) + "," + std::to_string(l) +
                                        ")");
            }
            ProbabilityEstimate& e = out[k][l];
            for (int r = 0; r < 2; ++r) {
                for (int s = 0; s < 2; ++s) {
                    double n = static_cast<double>(record.counts[k][l][r][s]);
                    double p = n / total;
                    e.p[r][s] = p;
                    e.sigma[r][s] = std::sqrt(p * (1.0 - p) / total);
                    if (n == 0.0 || n == total) {
                        e.boundary = true;
                    }
                }
            }
        }
    }
    return out;
}

EstimateWithError propagate_hardy(const HardyProbabilities& probs, const HardyProbabilities& sigmas,
                                  double bound) {
    if (sigmas.p1111 < 0 || sigmas.p1100 < 0 || sigmas.p1010 < 0 || sigmas.p0101 < 0) {
        throw Error("standard errors must be non-negative");
    }
    EstimateWithError e;
    e.value = hardy_from_probabilities(probs).h;
    e.sigma = std::sqrt(sigmas.p1111 * sigmas.p1111 + sigmas.p1100 * sigmas.p1100 +
                        sigmas.p1010 * sigmas.p1010 + sigmas.p0101 * sigmas.p0101);
    e.bound = bound;
    e.n_sigma = ratio_or_nan(e.value - bound, e.sigma);
    return e;
}

EstimateWithError propagate_chsh(double value, double sigma, double bound) {
    if (!(sigma > 0.0)) {
        throw Error("propagate_chsh needs a positive sigma");
    }
    return {value, sigma, bound, (value - bound) / sigma};
}

EstimateWithError hardy_from_counts(const CountRecord& record, double bound) {
    EstimateSet est = estimate_probabilities(record);
    HardyProbabilities p{est[1][1].p[1][1], est[1][0].p[1][0], est[0][1].p[0][1], est[0][0].p[1][1]};
    HardyProbabilities s{est[1][1].sigma[1][1], est[1][0].sigma[1][0], est[0][1].sigma[0][1],
                         est[0][0].sigma[1][1]};
    return propagate_hardy(p, s, bound);
}

EstimateWithError chsh_from_counts(const CountRecord& record, double bound) {
    EstimateSet est = estimate_probabilities(record);
    CorrelationTable table;
    double var = 0.0;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            const auto& p = est[k][l].p;
            double c = p[0][0] + p[1][1] - p[0][1] - p[1][0];
            table.c[k][l] = c;
            var += (1.0 - c * c) / static_cast<double>(record.setting_total(k, l));
        }
    }
    EstimateWithError e;
    e.value = chsh_value(table);
    e.sigma = std::sqrt(std::max(var, 0.0));
    e.bound = bound;
    e.n_sigma = ratio_or_nan(e.value - bound, e.sigma);
    return e;
}

void RunningStats::push(double x) {
    ++n_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
    if (other.n_ == 0) {
        return;
    }
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double delta = other.mean_ - mean_;
    const double n = na + nb;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    n_ += other.n_;
}

double RunningStats::variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

MonteCarloSummary monte_carlo_resample(const DistributionSet& dists, double mean_total, int trials,
                                       std::uint64_t seed, Quantity quantity) {
    if (trials < 2) {
        throw Error("monte_carlo_resample needs at least two trials");
    }
    std::vector<double> values(static_cast<std::size_t>(trials));
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(trials)));
    std::vector<std::future<void>> futures;
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < values.size(); i += workers) {
                CountRecord rec = sample_counts(dists, mean_total, split_seed(seed, i));
                values[i] = quantity == Quantity::kHardy ? hardy_from_counts(rec).value
                                                         : chsh_from_counts(rec).value;
            }
        }));
    }
    for (auto& f : futures) {
        f.get();
    }
    RunningStats stats;
    for (double v : values) {
        stats.push(v);
    }
    return {stats.mean(), std::sqrt(stats.variance()), trials};
}

}  // namespace tempcorr
