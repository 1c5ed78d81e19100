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

#include "tempcorr/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <thread>

#include "tempcorr/errors.hpp"

namespace tempcorr {

namespace {

using Spinor = Eigen::Vector2d;

Observable plane_observable(double angle, const char* label) {
    return Observable(BlochVector(std::sin(angle), 0.0, std::cos(angle)), label);
}

// Real spinor (c, s) ~ cos(t/2)|0> + sin(t/2)|1> has Bloch angle t in the x-z plane.
double spinor_angle(const Spinor& v) { return 2.0 * std::atan2(v[1], v[0]); }

Spinor perpendicular(const Spinor& v) {
    Spinor p(-v[1], v[0]);
    double n = p.norm();
    if (n < 1e-15) {
        // Any direction satisfies the zero condition.
        return Spinor(1.0, 0.0);
    }
    return p / n;
}

StateVector schmidt_state(double t) {
    StateVector psi = StateVector::Zero(4);
    psi[0] = std::cos(t);
    psi[3] = std::sin(t);
    return psi;
}

unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(jobs, 1)));
}

// Runs body(i) for i in [0, n) across worker threads; results keep index order.
template <typename T, typename Body>
std::vector<T> parallel_map(std::size_t n, Body body) {
    std::vector<T> out(n);
    unsigned workers = worker_count(n);
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                out[i] = body(i);
            }
        }));
    }
    for (auto& f : futures) {
        f.get();
    }
    return out;
}

}  // namespace

HardyResult hardy_from_probabilities(const HardyProbabilities& p) {
    return {p, p.p1111 - p.p1100 - p.p1010 - p.p0101};
}

HardyResult hardy_from_distributions(const DistributionSet& d) {
    HardyProbabilities p;
    p.p1111 = d[1][1].p[1][1];
    p.p1010 = d[1][0].p[1][0];
    p.p0101 = d[0][1].p[0][1];
    p.p1100 = d[0][0].p[1][1];
    return hardy_from_probabilities(p);
}

double chsh_value(const CorrelationTable& t) {
    return std::abs(t.c[0][0] + t.c[1][0] + t.c[0][1] - t.c[1][1]);
}

ChshResult chsh_from_distributions(const DistributionSet& d) {
    ChshResult out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            out.correlations.c[k][l] = correlator_from_distribution(d[k][l]);
        }
    }
    out.s = chsh_value(out.correlations);
    return out;
}

MeasurementScheme preset_hardy_scheme() {
    return {Observable(BlochVector(0, 0, -1), "A0"), Observable(BlochVector(1, 0, 0), "A1"),
            Observable(BlochVector(1, 0, 0), "B0"), Observable(BlochVector(0, 0, -1), "B1")};
}

MeasurementScheme preset_chsh_scheme() {
    const double h = std::numbers::sqrt2 / 2;
    return {Observable(BlochVector(0, 0, 1), "A0"), Observable(BlochVector(1, 0, 0), "A1"),
            Observable(BlochVector(h, 0, h), "B0"), Observable(BlochVector(-h, 0, h), "B1")};
}

DistributionSet temporal_distributions(const DensityMatrix& rho, const MeasurementScheme& scheme) {
    DistributionSet d;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            d[k][l] = luders_joint(rho, scheme.alice(k), scheme.bob(l), {k, l});
        }
    }
    return d;
}

DistributionSet spatial_distributions(const DensityMatrix& rho2, const MeasurementScheme& scheme) {
    DistributionSet d;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            d[k][l] = spatial_joint(rho2, scheme.alice(k), scheme.bob(l), {k, l});
        }
    }
    return d;
}

HardyResult hardy_evaluate(const DensityMatrix& rho, const MeasurementScheme& scheme) {
    return hardy_from_distributions(temporal_distributions(rho, scheme));
}

ChshResult chsh_evaluate(const DensityMatrix& rho, const MeasurementScheme& scheme) {
    ChshResult out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            out.correlations.c[k][l] = correlator_anticommutator(rho, scheme.alice(k), scheme.bob(l));
        }
    }
    out.s = chsh_value(out.correlations);
    return out;
}

ScanReport state_independence_scan(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw InvalidState("state_independence_scan needs at least one sample");
    }
    static constexpr PurityClass kClasses[] = {PurityClass::kPure, PurityClass::kMixed,
                                               PurityClass::kMaximallyMixedBlend};
    const MeasurementScheme scheme = preset_chsh_scheme();
    std::vector<double> values = parallel_map<double>(n, [&](std::size_t i) {
        DensityMatrix rho = random_density(2, kClasses[i % 3], split_seed(seed, i));
        return chsh_evaluate(rho, scheme).s;
    });
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi, *hi - *lo, n};
}

HardyResult spatial_hardy_evaluate(const DensityMatrix& rho2, const MeasurementScheme& scheme) {
    return hardy_from_distributions(spatial_distributions(rho2, scheme));
}

std::pair<StateVector, MeasurementScheme> spatial_hardy_point(const std::vector<double>& x,
                                                              HardyManifold manifold) {
    const std::size_t expected = manifold == HardyManifold::kParadox ? 2 : 5;
    if (x.size() != expected) {
        throw DimensionError("wrong number of spatial Hardy parameters");
    }
    const double t = x[0];
    StateVector psi = schmidt_state(t);
    if (manifold == HardyManifold::kUnconstrained) {
        return {psi, {plane_observable(x[1], "A0"), plane_observable(x[2], "A1"),
                      plane_observable(x[3], "B0"), plane_observable(x[4], "B1")}};
    }
    // Amplitude <u|(x)<w|psi> = u^T M w.
    Eigen::Matrix2d m = Eigen::Vector2d(std::cos(t), std::sin(t)).asDiagonal();
    Spinor a0_plus(std::cos(x[1] / 2), std::sin(x[1] / 2));
    Spinor a0_minus = perpendicular(a0_plus);
    Spinor b0_plus = perpendicular(m.transpose() * a0_plus);
    Spinor b0_minus = perpendicular(b0_plus);
    Spinor a1_plus = perpendicular(m * b0_minus);
    Spinor b1_plus = perpendicular(m.transpose() * a0_minus);
    return {psi, {plane_observable(x[1], "A0"), plane_observable(spinor_angle(a1_plus), "A1"),
                  plane_observable(spinor_angle(b0_plus), "B0"), plane_observable(spinor_angle(b1_plus), "B1")}};
}

SpatialHardyOptimum spatial_hardy_ascend(std::vector<double> x, const SpatialHardyOptions& options) {
    constexpr double kMinGain = 1e-15;
    auto objective = [&](const std::vector<double>& p) {
        auto [psi, scheme] = spatial_hardy_point(p, options.manifold);
        return spatial_hardy_evaluate(DensityMatrix::pure(psi), scheme).h;
    };
    if (options.product_states_only) {
        x[0] = 0.0;
    }
    const std::size_t first = options.product_states_only ? 1 : 0;
    double best = objective(x);
    double step = 0.1;
    int sweeps = 0;
    bool converged = true;
    while (step >= options.tolerance) {
        if (++sweeps > options.max_sweeps) {
            converged = false;
            break;
        }
        bool improved = false;
        for (std::size_t i = first; i < x.size(); ++i) {
            for (double dir : {+1.0, -1.0}) {
                std::vector<double> trial = x;
                trial[i] += dir * step;
                double v = objective(trial);
                // Gains below kMinGain are rounding noise on a plateau.
                if (v > best + kMinGain) {
                    best = v;
                    x = std::move(trial);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
    SpatialHardyOptimum out;
    auto [psi, scheme] = spatial_hardy_point(x, options.manifold);
    out.result = spatial_hardy_evaluate(DensityMatrix::pure(psi), scheme);
    out.h_max = out.result.h;
    out.parameters = std::move(x);
    out.state = std::move(psi);
    out.scheme = std::move(scheme);
    out.converged = converged;
    return out;
}

SpatialHardyOptimum spatial_hardy_maximize(const SpatialHardyOptions& options) {
    if (options.restarts < 1) {
        throw InvalidState("spatial_hardy_maximize needs at least one restart");
    }
    const std::size_t dims = options.manifold == HardyManifold::kParadox ? 2 : 5;
    auto runs = parallel_map<SpatialHardyOptimum>(
        static_cast<std::size_t>(options.restarts), [&](std::size_t i) {
            std::mt19937_64 rng(split_seed(options.seed, i));
            std::uniform_real_distribution<double> schmidt(0.0, std::numbers::pi / 2);
            std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
            std::vector<double> start(dims);
            start[0] = schmidt(rng);
            for (std::size_t d = 1; d < dims; ++d) {
                start[d] = angle(rng);
            }
            return spatial_hardy_ascend(std::move(start), options);
        });
    std::size_t best = 0;
    bool all_converged = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        all_converged = all_converged && runs[i].converged;
        if (runs[i].h_max > runs[best].h_max) {
            best = i;
        }
    }
    SpatialHardyOptimum out = std::move(runs[best]);
    out.converged = all_converged;
    return out;
}

}  // namespace tempcorr
