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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "tempcorr/errors.hpp"
#include "tempcorr/stats.hpp"

namespace tempcorr {

namespace {

namespace pt = boost::property_tree;

struct KindName {
    ExperimentKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::kHardy, "hardy"},
    {ExperimentKind::kChsh, "chsh"},
    {ExperimentKind::kStateScan, "state-scan"},
    {ExperimentKind::kHardySpatialMax, "hardy-spatial-max"},
    {ExperimentKind::kPpbsCheck, "ppbs-check"},
    {ExperimentKind::kProcessPredict, "process-predict"},
    {ExperimentKind::kMonteCarlo, "montecarlo"},
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<double> parse_numbers(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
        } catch (const std::exception&) {
            throw ConfigError("'" + key + "': not a number: " + tok);
        }
    }
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    auto v = parse_numbers(key, text);
    if (v.size() != 1) {
        throw ConfigError("'" + key + "' expects one number");
    }
    return v[0];
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
    double v = parse_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw ConfigError("'" + key + "' expects an integer");
    }
    return static_cast<std::int64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") {
        return true;
    }
    if (t == "false" || t == "0" || t == "no" || t == "off") {
        return false;
    }
    throw ConfigError("'" + key + "' expects a boolean");
}

StateVector ket(Complex h, Complex v) {
    StateVector psi(2);
    psi << h, v;
    return psi / psi.norm();
}

NamedState explicit_state(const std::string& name, const std::vector<double>& values) {
    int dim = 0;
    if (values.size() == 8) {
        dim = 2;
    } else if (values.size() == 32) {
        dim = 4;
    } else {
        throw ConfigError("state '" + name + "': expected 8 or 32 numbers (re im pairs, row-major)");
    }
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim * dim; ++i) {
        m(i / dim, i % dim) = Complex(values[2 * i], values[2 * i + 1]);
    }
    try {
        return {name, DensityMatrix(m)};
    } catch (const InvalidState& e) {
        throw ConfigError("state '" + name + "': " + e.what());
    }
}

NamedScheme explicit_scheme(const std::string& name, const std::vector<double>& v) {
    if (v.size() != 12) {
        throw ConfigError("scheme '" + name + "': expected 12 numbers (a0 a1 b0 b1 Bloch vectors)");
    }
    static const char* kLabels[] = {"A0", "A1", "B0", "B1"};
    std::vector<Observable> obs;
    for (int i = 0; i < 4; ++i) {
        BlochVector b(v[3 * i], v[3 * i + 1], v[3 * i + 2]);
        try {
            obs.emplace_back(b, kLabels[i]);
        } catch (const InvalidObservable& e) {
            throw ConfigError("scheme '" + name + "': " + e.what());
        }
    }
    return {name, {obs[0], obs[1], obs[2], obs[3]}};
}

const std::vector<std::string>& standard_state_names() {
    static const std::vector<std::string> names = {"H", "V", "D", "A", "L", "R", "mixed:0.84", "maximally-mixed"};
    return names;
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string axis_name(const BlochVector& b) {
    static const char* kAxes[] = {"X", "Y", "Z"};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(std::abs(b[i]) - 1.0) < kTolerance) {
            return std::string(b[i] < 0 ? "-" : "") + kAxes[i];
        }
    }
    return {};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

DistributionSet model_distributions(const DensityMatrix& rho, const MeasurementScheme& scheme,
                                    const NoiseModel& noise) {
    DistributionSet d;
    if (noise.depolarization > 0.0) {
        ProcessMatrix chi = depolarize(chi_from_unitary(cz_unitary()), noise.depolarization);
        d = meter_distributions(rho, scheme, gate_map(chi));
    } else {
        d = temporal_distributions(rho, scheme);
    }
    if (noise.visibility < 1.0) {
        d = apply_visibility(d, noise.visibility);
    }
    return d;
}

void add_sampled(ReportRow& row, const DistributionSet& d, const SamplingConfig& s, Quantity q) {
    if (s.mean_total <= 0.0) {
        return;
    }
    MonteCarloSummary mc = monte_carlo_resample(d, s.mean_total, s.trials, s.seed, q);
    row.value = mc.mean;
    row.sigma = mc.empirical_sigma;
    if (mc.empirical_sigma > 0.0 && row.bound) {
        row.n_sigma = (mc.mean - *row.bound) / mc.empirical_sigma;
    }
}

void run_inequality(const ExperimentConfig& cfg, Report& report, Quantity quantity) {
    for (const auto& st : cfg.states) {
        if (st.rho.dim() != 2) {
            throw ConfigError("state '" + st.name + "' is not a single qubit");
        }
        for (const auto& sc : cfg.schemes) {
            DistributionSet d = model_distributions(st.rho, sc.scheme, cfg.noise);
            ReportRow row;
            row.state = st.name;
            row.scheme = sc.name;
            if (quantity == Quantity::kHardy) {
                row.quantity = "H";
                row.bound = 0.0;
                row.value = hardy_from_distributions(d).h;
            } else {
                row.quantity = "S";
                row.bound = 2.0;
                if (cfg.noise.depolarization > 0.0) {
                    row.value = chsh_from_distributions(d).s;
                } else {
                    row.value = chsh_value(apply_visibility(chsh_evaluate(st.rho, sc.scheme).correlations,
                                                            cfg.noise.visibility));
                }
            }
            add_sampled(row, d, cfg.sampling, quantity);
            report.rows.push_back(row);
        }
    }
}

void run_state_scan(const ExperimentConfig& cfg, Report& report) {
    if (cfg.sampling.samples < 1) {
        throw ConfigError("state-scan needs samples >= 1");
    }
    ScanReport scan = state_independence_scan(static_cast<std::size_t>(cfg.sampling.samples), cfg.sampling.seed);
    report.rows.push_back({"random", "chsh", "S_min", scan.min_s, {}, {}, 2.0});
    report.rows.push_back({"random", "chsh", "S_max", scan.max_s, {}, {}, 2.0});
    report.rows.push_back({"random", "chsh", "S_spread", scan.spread, {}, {}, {}});
    report.summary["samples"] = static_cast<double>(scan.samples);
}

void run_spatial_max(const ExperimentConfig& cfg, Report& report) {
    SpatialHardyOptions opt;
    opt.restarts = cfg.optimizer.restarts;
    opt.seed = cfg.sampling.seed;
    opt.tolerance = cfg.optimizer.tolerance;
    opt.manifold = cfg.optimizer.manifold;
    opt.product_states_only = cfg.optimizer.product_states_only;
    SpatialHardyOptimum best = spatial_hardy_maximize(opt);
    const std::string manifold = cfg.optimizer.manifold == HardyManifold::kParadox ? "paradox" : "unconstrained";
    report.rows.push_back({"optimized", manifold, "H_max", best.h_max, {}, {}, 0.0});
    report.summary["p1111"] = best.result.probabilities.p1111;
    report.summary["p1100"] = best.result.probabilities.p1100;
    report.summary["p1010"] = best.result.probabilities.p1010;
    report.summary["p0101"] = best.result.probabilities.p0101;
    for (std::size_t i = 0; i < best.parameters.size(); ++i) {
        report.summary["parameter_" + std::to_string(i)] = best.parameters[i];
    }
    if (!best.converged) {
        report.flags.push_back("optimizer hit the sweep limit; best value so far reported");
    }
}

void run_ppbs_check(const ExperimentConfig& cfg, Report& report) {
    if (cfg.sampling.samples < 1) {
        throw ConfigError("ppbs-check needs samples >= 1");
    }
    PostselectedGate gate = ppbs_gate(cfg.ppbs);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < cfg.sampling.samples; ++i) {
        PurityClass cls = i % 2 == 0 ? PurityClass::kPure : PurityClass::kMaximallyMixedBlend;
        double p = gate.success_probability(random_density(4, cls, split_seed(cfg.sampling.seed, i)));
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    const Complex scale = gate.op(0, 0);
    const double deviation = (gate.op - scale * cz_unitary()).cwiseAbs().maxCoeff();
    report.rows.push_back({"random", "ppbs", "success_probability_min", lo, {}, {}, {}});
    report.rows.push_back({"random", "ppbs", "success_probability_max", hi, {}, {}, {}});
    report.rows.push_back({"-", "ppbs", "cz_scale", std::abs(scale), {}, {}, {}});
    report.rows.push_back({"-", "ppbs", "cz_deviation", deviation, {}, {}, {}});
    if (gate.unbalanced) {
        report.flags.push_back("unbalanced gate: eta_interfering exceeds eta_pass");
    }
}

void run_process_predict(const ExperimentConfig& cfg, Report& report) {
    const ProcessMatrix ideal = chi_from_unitary(cz_unitary());
    double weight = cfg.noise.depolarization;
    if (cfg.process_fidelity) {
        weight = depolarization_for_fidelity(*cfg.process_fidelity);
    }
    const ProcessMatrix chi = depolarize(ideal, weight);
    std::vector<DensityMatrix> states;
    for (const auto& st : cfg.states) {
        if (st.rho.dim() != 2) {
            throw ConfigError("state '" + st.name + "' is not a single qubit");
        }
        states.push_back(st.rho);
    }
    report.summary["depolarization"] = weight;
    report.summary["process_purity"] = process_purity(chi);
    report.summary["process_fidelity"] = process_fidelity(chi, ideal);
    for (const auto& sc : cfg.schemes) {
        ProcessPrediction pred = predict_from_process(chi, sc.scheme, states);
        for (std::size_t i = 0; i < states.size(); ++i) {
            report.rows.push_back({cfg.states[i].name, sc.name, "S", pred.s_per_state[i], {}, {}, 2.0});
        }
        report.summary["S_avg:" + sc.name] = pred.s_avg;
        report.summary["H_hardy"] = pred.hardy.h;
    }
}

void run_montecarlo(const ExperimentConfig& cfg, Report& report) {
    if (cfg.sampling.mean_total <= 0.0) {
        throw ConfigError("montecarlo needs sampling.mean_total > 0");
    }
    if (cfg.sampling.trials < 2) {
        throw ConfigError("montecarlo needs sampling.trials >= 2");
    }
    for (const auto& st : cfg.states) {
        if (st.rho.dim() != 2) {
            throw ConfigError("state '" + st.name + "' is not a single qubit");
        }
        for (const auto& sc : cfg.schemes) {
            DistributionSet d = model_distributions(st.rho, sc.scheme, cfg.noise);
            ReportRow row;
            row.state = st.name;
            row.scheme = sc.name;
            bool hardy = cfg.sampling.quantity == Quantity::kHardy;
            row.quantity = hardy ? "H" : "S";
            row.bound = hardy ? 0.0 : 2.0;
            add_sampled(row, d, cfg.sampling, cfg.sampling.quantity);
            report.rows.push_back(row);
        }
    }
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) {
            return kn.name;
        }
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_name(const std::string& name) {
    for (const auto& kn : kKindNames) {
        if (name == kn.name) {
            return kn.kind;
        }
    }
    return std::nullopt;
}

const std::vector<ExperimentKind>& all_experiments() {
    static const std::vector<ExperimentKind> kinds = [] {
        std::vector<ExperimentKind> v;
        for (const auto& kn : kKindNames) {
            v.push_back(kn.kind);
        }
        return v;
    }();
    return kinds;
}

std::optional<NamedState> state_preset(const std::string& name) {
    const double h = std::numbers::sqrt2 / 2;
    const Complex i(0, 1);
    if (name == "H") return NamedState{name, DensityMatrix::pure(ket(1, 0))};
    if (name == "V") return NamedState{name, DensityMatrix::pure(ket(0, 1))};
    if (name == "D") return NamedState{name, DensityMatrix::pure(ket(h, h))};
    if (name == "A") return NamedState{name, DensityMatrix::pure(ket(h, -h))};
    if (name == "L") return NamedState{name, DensityMatrix::pure(ket(h, i * h))};
    if (name == "R") return NamedState{name, DensityMatrix::pure(ket(h, -i * h))};
    if (name == "maximally-mixed") return NamedState{name, DensityMatrix::maximally_mixed(2)};
    const std::string prefix = "mixed:";
    if (name.rfind(prefix, 0) == 0) {
        double w = 0.0;
        try {
            std::size_t used = 0;
            std::string tail = name.substr(prefix.size());
            w = std::stod(tail, &used);
            if (used != tail.size()) {
                return std::nullopt;
            }
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (!(w >= 0.0 && w <= 1.0)) {
            return std::nullopt;
        }
        ComplexMatrix m = ComplexMatrix::Zero(2, 2);
        m(0, 0) = w;
        m(1, 1) = 1.0 - w;
        return NamedState{name, DensityMatrix(m)};
    }
    return std::nullopt;
}

std::optional<NamedScheme> scheme_preset(const std::string& name) {
    if (name == "chsh") return NamedScheme{name, preset_chsh_scheme()};
    if (name == "hardy") return NamedScheme{name, preset_hardy_scheme()};
    return std::nullopt;
}

std::vector<NamedState> standard_states() {
    std::vector<NamedState> out;
    for (const auto& n : standard_state_names()) {
        out.push_back(*state_preset(n));
    }
    return out;
}

ExperimentConfig default_config(ExperimentKind experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    switch (experiment) {
        case ExperimentKind::kHardy:
            cfg.states.push_back(*state_preset("H"));
            cfg.schemes.push_back(*scheme_preset("hardy"));
            break;
        case ExperimentKind::kMonteCarlo:
            cfg.states.push_back(*state_preset("H"));
            cfg.schemes.push_back(*scheme_preset("chsh"));
            cfg.sampling.mean_total = 1e5;
            cfg.sampling.trials = 100;
            break;
        default:
            cfg.states = standard_states();
            cfg.schemes.push_back(*scheme_preset("chsh"));
            break;
    }
    return cfg;
}

ExperimentConfig parse_config(std::istream& in, ExperimentKind experiment) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    ExperimentConfig cfg = default_config(experiment);

    static const std::map<std::string, std::vector<std::string>> kKnown = {
        {"experiment", {"name"}},
        {"states", {}},
        {"schemes", {}},
        {"noise", {"visibility", "depolarization"}},
        {"sampling", {"mean_total", "trials", "seed", "samples", "quantity"}},
        {"optimizer", {"restarts", "tolerance", "manifold", "product_states_only"}},
        {"ppbs", {"eta_interfering", "eta_pass", "compensation"}},
        {"process", {"fidelity"}},
        {"output", {"path", "format"}},
    };
    for (const auto& [section, body] : tree) {
        auto it = kKnown.find(section);
        if (it == kKnown.end()) {
            throw ConfigError("unknown section [" + section + "]");
        }
        if (it->second.empty()) {
            continue;
        }
        for (const auto& [key, value] : body) {
            if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
                throw ConfigError("unknown key '" + key + "' in [" + section + "]");
            }
        }
    }

    auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
        auto sec = tree.get_child_optional(pt::ptree::path_type(section, '\0'));
        if (!sec) {
            return std::nullopt;
        }
        auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v) {
            return std::nullopt;
        }
        return trim(*v);
    };

    if (auto name = get("experiment", "name")) {
        auto kind = parse_experiment_name(*name);
        if (!kind) {
            throw ConfigError("unknown experiment '" + *name + "'");
        }
        if (*kind != experiment) {
            throw ConfigError("config is for '" + *name + "' but was run as '" + experiment_name(experiment) + "'");
        }
    }

    if (auto sec = tree.get_child_optional(pt::ptree::path_type("states", '\0'))) {
        std::vector<NamedState> states;
        for (const auto& [key, value] : *sec) {
            std::string v = trim(value.data());
            if (key == "presets") {
                for (const auto& name : split_list(v)) {
                    auto st = state_preset(name);
                    if (!st) {
                        throw ConfigError("unknown state preset '" + name + "'");
                    }
                    states.push_back(*st);
                }
            } else {
                states.push_back(explicit_state(key, parse_numbers(key, v)));
            }
        }
        if (!states.empty()) {
            cfg.states = std::move(states);
        }
    }

    if (auto sec = tree.get_child_optional(pt::ptree::path_type("schemes", '\0'))) {
        std::vector<NamedScheme> schemes;
        for (const auto& [key, value] : *sec) {
            std::string v = trim(value.data());
            if (key == "presets") {
                for (const auto& name : split_list(v)) {
                    auto sc = scheme_preset(name);
                    if (!sc) {
                        throw ConfigError("unknown scheme preset '" + name + "'");
                    }
                    schemes.push_back(*sc);
                }
            } else {
                schemes.push_back(explicit_scheme(key, parse_numbers(key, v)));
            }
        }
        if (!schemes.empty()) {
            cfg.schemes = std::move(schemes);
        }
    }

    if (auto v = get("noise", "visibility")) cfg.noise.visibility = parse_double("visibility", *v);
    if (auto v = get("noise", "depolarization")) cfg.noise.depolarization = parse_double("depolarization", *v);
    try {
        cfg.noise.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    if (auto v = get("sampling", "mean_total")) {
        cfg.sampling.mean_total = parse_double("mean_total", *v);
        if (cfg.sampling.mean_total < 0.0) {
            throw ConfigError("mean_total must be non-negative");
        }
    }
    if (auto v = get("sampling", "trials")) cfg.sampling.trials = static_cast<int>(parse_int("trials", *v));
    if (auto v = get("sampling", "seed")) {
        std::int64_t seed = parse_int("seed", *v);
        if (seed < 0) {
            throw ConfigError("seed must be non-negative");
        }
        cfg.sampling.seed = static_cast<std::uint64_t>(seed);
    }
    if (auto v = get("sampling", "samples")) cfg.sampling.samples = static_cast<int>(parse_int("samples", *v));
    if (auto v = get("sampling", "quantity")) {
        if (*v == "H" || *v == "hardy") {
            cfg.sampling.quantity = Quantity::kHardy;
        } else if (*v == "S" || *v == "chsh") {
            cfg.sampling.quantity = Quantity::kChsh;
        } else {
            throw ConfigError("quantity must be H or S");
        }
    }
    if (cfg.sampling.mean_total > 0.0 && cfg.sampling.trials < 2) {
        throw ConfigError("sampling needs trials >= 2");
    }

    if (auto v = get("optimizer", "restarts")) {
        cfg.optimizer.restarts = static_cast<int>(parse_int("restarts", *v));
        if (cfg.optimizer.restarts < 1) {
            throw ConfigError("restarts must be >= 1");
        }
    }
    if (auto v = get("optimizer", "tolerance")) {
        cfg.optimizer.tolerance = parse_double("tolerance", *v);
        if (!(cfg.optimizer.tolerance > 0.0)) {
            throw ConfigError("tolerance must be positive");
        }
    }
    if (auto v = get("optimizer", "manifold")) {
        if (*v == "paradox") {
            cfg.optimizer.manifold = HardyManifold::kParadox;
        } else if (*v == "unconstrained") {
            cfg.optimizer.manifold = HardyManifold::kUnconstrained;
        } else {
            throw ConfigError("manifold must be paradox or unconstrained");
        }
    }
    if (auto v = get("optimizer", "product_states_only")) {
        cfg.optimizer.product_states_only = parse_bool("product_states_only", *v);
    }

    if (auto v = get("ppbs", "eta_interfering")) cfg.ppbs.eta_interfering = parse_double("eta_interfering", *v);
    if (auto v = get("ppbs", "eta_pass")) cfg.ppbs.eta_pass = parse_double("eta_pass", *v);
    if (auto v = get("ppbs", "compensation")) cfg.ppbs.compensation = parse_bool("compensation", *v);
    for (double eta : {cfg.ppbs.eta_interfering, cfg.ppbs.eta_pass}) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw ConfigError("PPBS transmittivities must lie in [0, 1]");
        }
    }

    if (auto v = get("process", "fidelity")) {
        double f = parse_double("fidelity", *v);
        if (!(f >= 1.0 / 16.0 && f <= 1.0)) {
            throw ConfigError("process fidelity must lie in [1/16, 1]");
        }
        cfg.process_fidelity = f;
    }

    if (auto v = get("output", "path")) cfg.output.path = *v;
    if (auto v = get("output", "format")) {
        if (*v == "csv") {
            cfg.output.format = OutputFormat::kCsv;
        } else if (*v == "structured") {
            cfg.output.format = OutputFormat::kStructured;
        } else {
            throw ConfigError("format must be csv or structured");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentKind experiment) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(in, experiment);
}

Report run(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.config = config;
    config.noise.validate();
    switch (config.experiment) {
        case ExperimentKind::kHardy:
            run_inequality(config, report, Quantity::kHardy);
            break;
        case ExperimentKind::kChsh:
            run_inequality(config, report, Quantity::kChsh);
            break;
        case ExperimentKind::kStateScan:
            run_state_scan(config, report);
            break;
        case ExperimentKind::kHardySpatialMax:
            run_spatial_max(config, report);
            break;
        case ExperimentKind::kPpbsCheck:
            run_ppbs_check(config, report);
            break;
        case ExperimentKind::kProcessPredict:
            run_process_predict(config, report);
            break;
        case ExperimentKind::kMonteCarlo:
            run_montecarlo(config, report);
            break;
    }
    std::size_t violations = 0;
    for (const auto& row : report.rows) {
        if (row.bound && (row.quantity == "S" || row.quantity == "H") && row.value > *row.bound) {
            ++violations;
        }
    }
    if (violations > 0) {
        report.flags.push_back(std::to_string(violations) + " row(s) violate the classical bound");
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string to_csv(const Report& report) {
    std::ostringstream out;
    const std::string exp = experiment_name(report.config.experiment);
    const std::string seed = std::to_string(report.config.sampling.seed);
    out << "experiment,state,scheme,quantity,value,sigma,n_sigma,seed\n";
    for (const auto& row : report.rows) {
        out << exp << ',' << csv_field(row.state) << ',' << csv_field(row.scheme) << ',' << row.quantity << ','
            << format_number(row.value) << ',' << (row.sigma ? format_number(*row.sigma) : "") << ','
            << (row.n_sigma ? format_number(*row.n_sigma) : "") << ',' << seed << '\n';
    }
    return out.str();
}

std::string to_structured(const Report& report) {
    using nlohmann::ordered_json;
    const ExperimentConfig& cfg = report.config;
    ordered_json doc;
    doc["experiment"] = experiment_name(cfg.experiment);

    ordered_json echo;
    ordered_json states = ordered_json::array();
    for (const auto& s : cfg.states) {
        states.push_back(s.name);
    }
    ordered_json schemes = ordered_json::array();
    for (const auto& s : cfg.schemes) {
        ordered_json vectors;
        for (int k = 0; k < 2; ++k) {
            const BlochVector& a = s.scheme.alice(k).bloch();
            const BlochVector& b = s.scheme.bob(k).bloch();
            vectors["a" + std::to_string(k)] = {a.x(), a.y(), a.z()};
            vectors["b" + std::to_string(k)] = {b.x(), b.y(), b.z()};
        }
        schemes.push_back({{"name", s.name}, {"bloch", vectors}});
    }
    echo["states"] = states;
    echo["schemes"] = schemes;
    echo["noise"] = {{"visibility", cfg.noise.visibility}, {"depolarization", cfg.noise.depolarization}};
    echo["sampling"] = {{"mean_total", cfg.sampling.mean_total},
                        {"trials", cfg.sampling.trials},
                        {"samples", cfg.sampling.samples},
                        {"seed", cfg.sampling.seed}};
    doc["config"] = echo;

    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r;
        r["state"] = row.state;
        r["scheme"] = row.scheme;
        r["quantity"] = row.quantity;
        r["value"] = row.value;
        if (row.sigma) r["sigma"] = *row.sigma;
        if (row.n_sigma) r["n_sigma"] = *row.n_sigma;
        if (row.bound) {
            r["bound"] = *row.bound;
            r["violates_bound"] = row.value > *row.bound;
        }
        rows.push_back(r);
    }
    doc["results"] = rows;
    ordered_json summary = ordered_json::object();
    for (const auto& [k, v] : report.summary) {
        summary[k] = v;
    }
    doc["summary"] = summary;
    doc["flags"] = report.flags;
    doc["metadata"] = {{"seed", cfg.sampling.seed},
                       {"version", kVersion},
                       {"wall_time_seconds", report.wall_time_seconds}};
    return doc.dump(2) + "\n";
}

std::string list_presets() {
    std::ostringstream out;
    out << "states:\n";
    for (const auto& st : standard_states()) {
        BlochVector b = bloch_vector(st.rho);
        out << "  " << st.name << "  bloch=(" << format_number(b.x()) << ", " << format_number(b.y()) << ", "
            << format_number(b.z()) << ")  purity=" << format_number(purity(st.rho)) << '\n';
    }
    out << "  (mixed:<w> accepts any weight w in [0,1]: w|H><H| + (1-w)|V><V|)\n";
    out << "schemes:\n";
    for (const char* name : {"hardy", "chsh"}) {
        NamedScheme sc = *scheme_preset(name);
        out << "  " << name << '\n';
        for (const Observable* o : {&sc.scheme.a0, &sc.scheme.a1, &sc.scheme.b0, &sc.scheme.b1}) {
            out << "    " << o->label() << " = (" << format_number(o->bloch().x()) << ", "
                << format_number(o->bloch().y()) << ", " << format_number(o->bloch().z()) << ')';
            std::string axis = axis_name(o->bloch());
            if (!axis.empty()) {
                out << "  " << axis;
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace tempcorr
