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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempcorr/inequalities.hpp"
#include "tempcorr/photonic.hpp"
#include "tempcorr/qcore.hpp"
#include "tempcorr/stats.hpp"

namespace tempcorr {

inline constexpr const char* kVersion = "0.1.0";

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "TEMPCORR_OUTPUT_DIR";

enum class ExperimentKind {
    kHardy,
    kChsh,
    kStateScan,
    kHardySpatialMax,
    kPpbsCheck,
    kProcessPredict,
    kMonteCarlo,
};

std::string experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_name(const std::string& name);
const std::vector<ExperimentKind>& all_experiments();

enum class OutputFormat { kCsv, kStructured };

struct NamedState {
    std::string name;
    DensityMatrix rho;
};

struct NamedScheme {
    std::string name;
    MeasurementScheme scheme;
};

/// H, V, D, A, L, R, mixed:<w> (w|H><H| + (1-w)|V><V|) and maximally-mixed.
std::optional<NamedState> state_preset(const std::string& name);

/// "chsh" or "hardy".
std::optional<NamedScheme> scheme_preset(const std::string& name);

/// The eight input states of the temporal CHSH sweep.
std::vector<NamedState> standard_states();

struct SamplingConfig {
    /// Mean coincidences per setting pair; 0 disables count simulation.
    double mean_total = 0.0;
    int trials = 10;
    std::uint64_t seed = 1;
    /// Random inputs for state-scan and ppbs-check.
    int samples = 10000;
    /// montecarlo only.
    Quantity quantity = Quantity::kChsh;
};

struct OptimizerConfig {
    int restarts = 200;
    double tolerance = 1e-8;
    HardyManifold manifold = HardyManifold::kParadox;
    bool product_states_only = false;
};

struct OutputConfig {
    std::string path;
    OutputFormat format = OutputFormat::kCsv;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::kChsh;
    std::vector<NamedState> states;
    std::vector<NamedScheme> schemes;
    NoiseModel noise;
    SamplingConfig sampling;
    OptimizerConfig optimizer;
    PpbsConfig ppbs;
    /// process-predict: target fidelity of the depolarized CZ process.
    std::optional<double> process_fidelity;
    OutputConfig output;
};

/// Parses the sectioned key-value format. Sections: experiment, states,
/// schemes, noise, sampling, optimizer, ppbs, process, output. Missing state
/// and scheme lists fall back to per-experiment defaults. Throws ConfigError.
ExperimentConfig parse_config(std::istream& in, ExperimentKind experiment);
ExperimentConfig load_config(const std::string& path, ExperimentKind experiment);
ExperimentConfig default_config(ExperimentKind experiment);

struct ReportRow {
    std::string state;
    std::string scheme;
    std::string quantity;
    double value = 0.0;
    std::optional<double> sigma;
    std::optional<double> n_sigma;
    /// Classical bound the value is compared against, when one applies.
    std::optional<double> bound;
};

struct Report {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    std::map<std::string, double> summary;
    std::vector<std::string> flags;
    double wall_time_seconds = 0.0;
};

/// Deterministic given the config (wall time aside).
Report run(const ExperimentConfig& config);

/// Header: experiment,state,scheme,quantity,value,sigma,n_sigma,seed.
std::string to_csv(const Report& report);

/// JSON document with the config echo, rows, summary and metadata.
std::string to_structured(const Report& report);

std::string list_presets();

}  // namespace tempcorr
