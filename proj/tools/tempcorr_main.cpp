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

// Batch driver: one subcommand per experiment, plus `presets`.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "tempcorr/errors.hpp"
#include "tempcorr/experiment.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
};

std::string default_output_path(tempcorr::ExperimentKind kind, tempcorr::OutputFormat format) {
    const char* dir = std::getenv(tempcorr::kOutputDirEnv);
    if (dir == nullptr || *dir == '\0') {
        return {};
    }
    std::string ext = format == tempcorr::OutputFormat::kCsv ? ".csv" : ".json";
    return (std::filesystem::path(dir) / (tempcorr::experiment_name(kind) + ext)).string();
}

int run_experiment(tempcorr::ExperimentKind kind, const Flags& flags) {
    using namespace tempcorr;
    ExperimentConfig cfg = flags.config.empty() ? default_config(kind) : load_config(flags.config, kind);
    if (flags.seed) {
        cfg.sampling.seed = *flags.seed;
    }
    if (!flags.format.empty()) {
        cfg.output.format = flags.format == "csv" ? OutputFormat::kCsv : OutputFormat::kStructured;
    }
    if (!flags.out.empty()) {
        cfg.output.path = flags.out;
    }
    if (cfg.output.path.empty()) {
        cfg.output.path = default_output_path(kind, cfg.output.format);
    }

    Report report = run(cfg);
    std::string body = cfg.output.format == OutputFormat::kCsv ? to_csv(report) : to_structured(report);
    if (cfg.output.path.empty() || cfg.output.path == "-") {
        std::cout << body;
    } else {
        std::ofstream out(cfg.output.path, std::ios::binary);
        if (!out || !(out << body) || !out.flush()) {
            std::cerr << "error: cannot write output file '" << cfg.output.path << "'\n";
            return kExitIo;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal Hardy / CHSH simulator and statistics toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tempcorr::kVersion);

    Flags flags;
    std::optional<tempcorr::ExperimentKind> chosen;
    for (tempcorr::ExperimentKind kind : tempcorr::all_experiments()) {
        CLI::App* sub = app.add_subcommand(tempcorr::experiment_name(kind), "run the " +
                                                                               tempcorr::experiment_name(kind) +
                                                                               " experiment");
        sub->add_option("--config", flags.config, "experiment config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", flags.seed, "seed (overrides the config)");
        sub->add_option("--out", flags.out, "output path ('-' for stdout)");
        sub->add_option("--format", flags.format, "output format")->check(CLI::IsMember({"csv", "structured"}));
        sub->callback([&chosen, kind] { chosen = kind; });
    }
    bool presets = false;
    app.add_subcommand("presets", "list state and scheme presets")->callback([&presets] { presets = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (presets) {
        std::cout << tempcorr::list_presets();
        return 0;
    }
    try {
        return run_experiment(*chosen, flags);
    } catch (const tempcorr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
