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

#include "tempcorr/experiment.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "tempcorr/errors.hpp"

using namespace tempcorr;

namespace {

constexpr double kTsirelson = 2 * std::numbers::sqrt2;

ExperimentConfig parse(const std::string& text, ExperimentKind kind) {
    std::istringstream in(text);
    return parse_config(in, kind);
}

}  // namespace

TEST(experiment, names_round_trip) {
    for (ExperimentKind kind : all_experiments()) {
        EXPECT_EQ(parse_experiment_name(experiment_name(kind)), kind);
    }
    EXPECT_EQ(all_experiments().size(), 7u);
    EXPECT_FALSE(parse_experiment_name("bell").has_value());
}

TEST(experiment, presets) {
    EXPECT_EQ(standard_states().size(), 8u);
    auto d = state_preset("D");
    ASSERT_TRUE(d.has_value());
    EXPECT_NEAR(bloch_vector(d->rho).x(), 1.0, 1e-15);
    auto l = state_preset("L");
    ASSERT_TRUE(l.has_value());
    EXPECT_NEAR(std::abs(bloch_vector(l->rho).y()), 1.0, 1e-15);
    auto mixed = state_preset("mixed:0.5");
    ASSERT_TRUE(mixed.has_value());
    EXPECT_NEAR(purity(mixed->rho), 0.5, 1e-12);
    EXPECT_NEAR(purity(state_preset("mixed:0.84")->rho), 0.7312, 1e-12);
    EXPECT_FALSE(state_preset("mixed:1.5").has_value());
    EXPECT_FALSE(state_preset("Q").has_value());
    EXPECT_TRUE(scheme_preset("hardy").has_value());
    EXPECT_FALSE(scheme_preset("bell").has_value());
}

TEST(experiment, defaults) {
    auto hardy = default_config(ExperimentKind::kHardy);
    ASSERT_EQ(hardy.states.size(), 1u);
    EXPECT_EQ(hardy.states[0].name, "H");
    EXPECT_EQ(hardy.schemes[0].name, "hardy");
    auto chsh = default_config(ExperimentKind::kChsh);
    EXPECT_EQ(chsh.states.size(), 8u);
    EXPECT_EQ(chsh.schemes[0].name, "chsh");
}

TEST(experiment, parse_full_config) {
    auto cfg = parse(
        "[experiment]\nname = chsh\n"
        "[states]\npresets = H, D\ncustom = 0.5 0 0 0 0 0 0.5 0\n"
        "[schemes]\npresets = chsh\nzz = 0 0 1 0 0 1 0 0 1 0 0 1\n"
        "[noise]\nvisibility = 0.9\n"
        "[sampling]\nmean_total = 1000\ntrials = 5\nseed = 9\n"
        "[output]\nformat = structured\n",
        ExperimentKind::kChsh);
    ASSERT_EQ(cfg.states.size(), 3u);
    EXPECT_EQ(cfg.states[2].name, "custom");
    ASSERT_EQ(cfg.schemes.size(), 2u);
    EXPECT_EQ(cfg.schemes[1].name, "zz");
    EXPECT_DOUBLE_EQ(cfg.noise.visibility, 0.9);
    EXPECT_DOUBLE_EQ(cfg.sampling.mean_total, 1000.0);
    EXPECT_EQ(cfg.sampling.trials, 5);
    EXPECT_EQ(cfg.sampling.seed, 9u);
    EXPECT_EQ(cfg.output.format, OutputFormat::kStructured);
}

TEST(experiment, parse_errors) {
    auto bad = [](const std::string& text) {
        EXPECT_THROW(parse(text, ExperimentKind::kChsh), ConfigError) << text;
    };
    bad("[noise]\nvisibility = 1.5\n");
    bad("[noise]\nvisibility = abc\n");
    bad("[noise]\ncolor = red\n");
    bad("[mystery]\nx = 1\n");
    bad("[experiment]\nname = hardy\n");
    bad("[experiment]\nname = bell\n");
    bad("[states]\npresets = Q\n");
    bad("[states]\nbroken = 1 0 0\n");
    bad("[states]\nnegative = 2 0 0 0 0 0 -1 0\n");
    bad("[schemes]\nshort = 0 0 1\n");
    bad("[schemes]\nzero = 0 0 0 0 0 1 0 0 1 0 0 1\n");
    bad("[sampling]\nmean_total = -3\n");
    bad("[sampling]\nseed = -1\n");
    bad("[output]\nformat = xml\n");
    bad("this is not ini [\n");
    EXPECT_THROW(load_config("/nonexistent/config.ini", ExperimentKind::kChsh), ConfigError);
}

TEST(experiment, run_chsh) {
    auto report = run(default_config(ExperimentKind::kChsh));
    ASSERT_EQ(report.rows.size(), 8u);
    for (const auto& row : report.rows) {
        EXPECT_EQ(row.quantity, "S");
        EXPECT_NEAR(row.value, kTsirelson, 1e-10);
        EXPECT_FALSE(row.sigma.has_value());
    }

    auto noisy = default_config(ExperimentKind::kChsh);
    noisy.noise.visibility = 0.91;
    for (const auto& row : run(noisy).rows) EXPECT_NEAR(row.value, 0.91 * kTsirelson, 1e-10);
}

TEST(experiment, run_rows_cover_states_and_schemes) {
    auto cfg = default_config(ExperimentKind::kHardy);
    cfg.states = standard_states();
    cfg.schemes = {*scheme_preset("hardy"), *scheme_preset("chsh")};
    auto report = run(cfg);
    EXPECT_EQ(report.rows.size(), 16u);
    EXPECT_NEAR(report.rows[0].value, 0.25, 1e-12);
}

TEST(experiment, run_with_sampling) {
    auto cfg = default_config(ExperimentKind::kHardy);
    cfg.sampling.mean_total = 1e5;
    cfg.sampling.trials = 20;
    auto report = run(cfg);
    ASSERT_EQ(report.rows.size(), 1u);
    ASSERT_TRUE(report.rows[0].sigma.has_value());
    ASSERT_TRUE(report.rows[0].n_sigma.has_value());
    EXPECT_GT(*report.rows[0].n_sigma, 10.0);
    EXPECT_FALSE(report.flags.empty());
}

TEST(experiment, run_rejects_two_qubit_state_for_temporal) {
    auto cfg = parse("[states]\nbell = 0.5 0 0 0 0 0 0.5 0  0 0 0 0 0 0 0 0  0 0 0 0 0 0 0 0  0.5 0 0 0 0 0 0.5 0\n",
                     ExperimentKind::kChsh);
    EXPECT_THROW(run(cfg), ConfigError);
}

TEST(experiment, csv_is_deterministic) {
    auto cfg = default_config(ExperimentKind::kMonteCarlo);
    cfg.sampling.trials = 10;
    auto a = to_csv(run(cfg));
    auto b = to_csv(run(cfg));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, a.find('\n')), "experiment,state,scheme,quantity,value,sigma,n_sigma,seed");
}

TEST(experiment, csv_empty_fields) {
    auto csv = to_csv(run(default_config(ExperimentKind::kHardy)));
    EXPECT_NE(csv.find("hardy,H,hardy,H,0.25,,,1"), std::string::npos) << csv;
}

TEST(experiment, structured_output) {
    auto text = to_structured(run(default_config(ExperimentKind::kHardy)));
    EXPECT_NE(text.find("\"experiment\""), std::string::npos);
    EXPECT_NE(text.find("\"metadata\""), std::string::npos);
    EXPECT_NE(text.find("\"version\""), std::string::npos);
    EXPECT_NE(text.find("\"violates_bound\""), std::string::npos);
}

TEST(experiment, list_presets) {
    auto text = list_presets();
    EXPECT_NE(text.find("maximally-mixed"), std::string::npos);
    EXPECT_NE(text.find("-Z"), std::string::npos);
    for (const auto& s : standard_states()) EXPECT_NE(text.find(s.name), std::string::npos);
}

TEST(experiment, ppbs_check_and_process_predict) {
    auto ppbs = default_config(ExperimentKind::kPpbsCheck);
    ppbs.sampling.samples = 100;
    auto report = run(ppbs);
    for (const auto& row : report.rows) {
        if (row.quantity == "success_probability_min" || row.quantity == "success_probability_max") {
            EXPECT_NEAR(row.value, 1.0 / 9.0, 1e-12);
        }
        if (row.quantity == "cz_scale") EXPECT_NEAR(row.value, 1.0 / 3.0, 1e-12);
    }

    auto pp = default_config(ExperimentKind::kProcessPredict);
    pp.process_fidelity = 0.937;
    auto pred = run(pp);
    EXPECT_NEAR(pred.summary.at("depolarization"), 0.0672, 1e-12);
    EXPECT_NEAR(pred.summary.at("S_avg:chsh"), (1 - 0.0672) * kTsirelson, 1e-10);
}
