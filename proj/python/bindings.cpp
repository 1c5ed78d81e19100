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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tempcorr/errors.hpp"
#include "tempcorr/experiment.hpp"
#include "tempcorr/inequalities.hpp"
#include "tempcorr/photonic.hpp"
#include "tempcorr/qcore.hpp"
#include "tempcorr/seqmeas.hpp"
#include "tempcorr/stats.hpp"

namespace py = pybind11;
using namespace tempcorr;

namespace {

DistributionSet as_distribution_set(const std::vector<JointDistribution>& flat) {
    if (flat.size() != 4) {
        throw DimensionError("expected four joint distributions ordered (k,l) = 00, 01, 10, 11");
    }
    DistributionSet d;
    for (int i = 0; i < 4; ++i) {
        d[i / 2][i % 2] = flat[i];
    }
    return d;
}

std::vector<JointDistribution> flatten(const DistributionSet& d) {
    return {d[0][0], d[0][1], d[1][0], d[1][1]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact simulator for temporal Hardy and CHSH correlations";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<InvalidObservable>(m, "InvalidObservable", base.ptr());
    py::register_exception<InvalidState>(m, "InvalidState", base.ptr());
    py::register_exception<NonUnitaryError>(m, "NonUnitaryError", base.ptr());
    py::register_exception<NotCompletelyPositive>(m, "NotCompletelyPositive", base.ptr());
    py::register_exception<UnsupportedFidelity>(m, "UnsupportedFidelity", base.ptr());
    py::register_exception<UndefinedEstimate>(m, "UndefinedEstimate", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    // qcore
    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<ComplexMatrix>(), py::arg("matrix"))
        .def_static("from_numeric", &DensityMatrix::from_numeric)
        .def_static("pure", &DensityMatrix::pure)
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed)
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("dim", &DensityMatrix::dim);

    py::class_<Observable>(m, "Observable")
        .def(py::init<BlochVector, std::string>(), py::arg("bloch"), py::arg("label") = "")
        .def_property_readonly("bloch", &Observable::bloch)
        .def_property_readonly("label", &Observable::label)
        .def("__repr__", [](const Observable& o) {
            return "Observable(" + o.label() + ", (" + std::to_string(o.bloch().x()) + ", " +
                   std::to_string(o.bloch().y()) + ", " + std::to_string(o.bloch().z()) + "))";
        });

    py::enum_<PurityClass>(m, "PurityClass")
        .value("PURE", PurityClass::kPure)
        .value("MIXED", PurityClass::kMixed)
        .value("MAXIMALLY_MIXED_BLEND", PurityClass::kMaximallyMixedBlend);

    py::enum_<Subsystem>(m, "Subsystem").value("FIRST", Subsystem::kFirst).value("SECOND", Subsystem::kSecond);

    m.def("observable_matrix", &observable_matrix);
    m.def("projector", &projector, py::arg("obs"), py::arg("outcome"));
    m.def("purity", &purity);
    m.def("random_density", &random_density, py::arg("dim"), py::arg("purity_class"), py::arg("seed"));
    m.def("tensor", &tensor);
    m.def("partial_trace", &partial_trace, py::arg("m"), py::arg("keep"));
    m.def("hermitian_eigenvalues", &hermitian_eigenvalues);

    // seqmeas
    py::class_<SettingPair>(m, "SettingPair")
        .def(py::init<int, int>(), py::arg("k") = 0, py::arg("l") = 0)
        .def_readwrite("k", &SettingPair::k)
        .def_readwrite("l", &SettingPair::l);

    py::class_<MeasurementScheme>(m, "MeasurementScheme")
        .def(py::init<Observable, Observable, Observable, Observable>(), py::arg("a0"), py::arg("a1"),
             py::arg("b0"), py::arg("b1"))
        .def_readonly("a0", &MeasurementScheme::a0)
        .def_readonly("a1", &MeasurementScheme::a1)
        .def_readonly("b0", &MeasurementScheme::b0)
        .def_readonly("b1", &MeasurementScheme::b1)
        .def("rotated", &MeasurementScheme::rotated);

    py::class_<JointDistribution>(m, "JointDistribution")
        .def(py::init<>())
        .def_readwrite("p", &JointDistribution::p)
        .def_readwrite("setting", &JointDistribution::setting)
        .def("sum", &JointDistribution::sum);

    py::class_<CorrelationTable>(m, "CorrelationTable")
        .def(py::init<>())
        .def_readwrite("c", &CorrelationTable::c);

    m.def("luders_joint", &luders_joint, py::arg("rho"), py::arg("a"), py::arg("b"),
          py::arg("setting") = SettingPair{});
    m.def("spatial_joint", &spatial_joint, py::arg("rho2"), py::arg("a"), py::arg("b"),
          py::arg("setting") = SettingPair{});
    m.def("correlator_from_distribution", &correlator_from_distribution);
    m.def("correlator_anticommutator", &correlator_anticommutator);
    m.def("bloch_correlator", &bloch_correlator);

    // inequalities
    py::class_<HardyProbabilities>(m, "HardyProbabilities")
        .def(py::init<double, double, double, double>(), py::arg("p1111") = 0.0, py::arg("p1010") = 0.0,
             py::arg("p0101") = 0.0, py::arg("p1100") = 0.0)
        .def_readwrite("p1111", &HardyProbabilities::p1111)
        .def_readwrite("p1010", &HardyProbabilities::p1010)
        .def_readwrite("p0101", &HardyProbabilities::p0101)
        .def_readwrite("p1100", &HardyProbabilities::p1100);

    py::class_<HardyResult>(m, "HardyResult")
        .def_readonly("probabilities", &HardyResult::probabilities)
        .def_readonly("h", &HardyResult::h);

    py::class_<ChshResult>(m, "ChshResult")
        .def_readonly("correlations", &ChshResult::correlations)
        .def_readonly("s", &ChshResult::s);

    py::class_<ScanReport>(m, "ScanReport")
        .def_readonly("min_s", &ScanReport::min_s)
        .def_readonly("max_s", &ScanReport::max_s)
        .def_readonly("spread", &ScanReport::spread)
        .def_readonly("samples", &ScanReport::samples);

    m.def("preset_hardy_scheme", &preset_hardy_scheme);
    m.def("preset_chsh_scheme", &preset_chsh_scheme);
    m.def("hardy_from_probabilities", &hardy_from_probabilities);
    m.def("hardy_evaluate", &hardy_evaluate);
    m.def("chsh_evaluate", &chsh_evaluate);
    m.def("chsh_value", &chsh_value);
    m.def("temporal_distributions",
          [](const DensityMatrix& rho, const MeasurementScheme& s) { return flatten(temporal_distributions(rho, s)); });
    m.def("state_independence_scan", &state_independence_scan, py::arg("n"), py::arg("seed"));
    m.def("spatial_hardy_evaluate", &spatial_hardy_evaluate);

    py::enum_<HardyManifold>(m, "HardyManifold")
        .value("PARADOX", HardyManifold::kParadox)
        .value("UNCONSTRAINED", HardyManifold::kUnconstrained);

    py::class_<SpatialHardyOptions>(m, "SpatialHardyOptions")
        .def(py::init<>())
        .def_readwrite("restarts", &SpatialHardyOptions::restarts)
        .def_readwrite("seed", &SpatialHardyOptions::seed)
        .def_readwrite("tolerance", &SpatialHardyOptions::tolerance)
        .def_readwrite("manifold", &SpatialHardyOptions::manifold)
        .def_readwrite("product_states_only", &SpatialHardyOptions::product_states_only)
        .def_readwrite("max_sweeps", &SpatialHardyOptions::max_sweeps);

    py::class_<SpatialHardyOptimum>(m, "SpatialHardyOptimum")
        .def_readonly("h_max", &SpatialHardyOptimum::h_max)
        .def_readonly("parameters", &SpatialHardyOptimum::parameters)
        .def_readonly("state", &SpatialHardyOptimum::state)
        .def_readonly("scheme", &SpatialHardyOptimum::scheme)
        .def_readonly("result", &SpatialHardyOptimum::result)
        .def_readonly("converged", &SpatialHardyOptimum::converged);

    m.def("spatial_hardy_maximize", &spatial_hardy_maximize, py::arg("options") = SpatialHardyOptions{});

    // photonic
    m.def("cz_unitary", &cz_unitary);

    py::class_<PpbsConfig>(m, "PpbsConfig")
        .def(py::init<>())
        .def_readwrite("eta_interfering", &PpbsConfig::eta_interfering)
        .def_readwrite("eta_pass", &PpbsConfig::eta_pass)
        .def_readwrite("compensation", &PpbsConfig::compensation);

    py::class_<PostselectedGate>(m, "PostselectedGate")
        .def_readonly("op", &PostselectedGate::op)
        .def_readonly("unbalanced", &PostselectedGate::unbalanced)
        .def("success_probability", &PostselectedGate::success_probability);

    m.def("ppbs_gate", &ppbs_gate, py::arg("config") = PpbsConfig{});

    py::class_<ProcessMatrix>(m, "ProcessMatrix")
        .def(py::init<ComplexMatrix>())
        .def_property_readonly("chi", &ProcessMatrix::chi)
        .def("is_completely_positive", &ProcessMatrix::is_completely_positive, py::arg("tol") = 1e-10)
        .def("apply", &ProcessMatrix::apply);

    m.def("chi_from_unitary", &chi_from_unitary);
    m.def("depolarize", &depolarize);
    m.def("depolarization_for_fidelity", &depolarization_for_fidelity);
    m.def("process_purity", &process_purity);
    m.def("process_fidelity", &process_fidelity);
    m.def("apply_visibility", py::overload_cast<const CorrelationTable&, double>(&apply_visibility));

    py::class_<MeterOutcome>(m, "MeterOutcome")
        .def_readonly("probabilities", &MeterOutcome::probabilities)
        .def_readonly("post_states", &MeterOutcome::post_states)
        .def_readonly("herald_probability", &MeterOutcome::herald_probability);

    m.def("meter_measure", [](const DensityMatrix& rho, const Observable& setting, const ComplexMatrix& gate) {
        return meter_measure(rho, setting, gate_map(gate));
    });
    m.def("meter_measure", [](const DensityMatrix& rho, const Observable& setting, const PostselectedGate& gate) {
        return meter_measure(rho, setting, gate_map(gate));
    });
    m.def("meter_measure", [](const DensityMatrix& rho, const Observable& setting, const ProcessMatrix& chi) {
        return meter_measure(rho, setting, gate_map(chi));
    });

    py::class_<ProcessPrediction>(m, "ProcessPrediction")
        .def_readonly("s_per_state", &ProcessPrediction::s_per_state)
        .def_readonly("s_avg", &ProcessPrediction::s_avg)
        .def_readonly("hardy", &ProcessPrediction::hardy);

    m.def("predict_from_process", &predict_from_process);

    // stats
    py::class_<EstimateWithError>(m, "EstimateWithError")
        .def_readonly("value", &EstimateWithError::value)
        .def_readonly("sigma", &EstimateWithError::sigma)
        .def_readonly("bound", &EstimateWithError::bound)
        .def_readonly("n_sigma", &EstimateWithError::n_sigma);

    py::enum_<Quantity>(m, "Quantity").value("HARDY", Quantity::kHardy).value("CHSH", Quantity::kChsh);

    py::class_<MonteCarloSummary>(m, "MonteCarloSummary")
        .def_readonly("mean", &MonteCarloSummary::mean)
        .def_readonly("empirical_sigma", &MonteCarloSummary::empirical_sigma)
        .def_readonly("trials", &MonteCarloSummary::trials);

    m.def("propagate_hardy", &propagate_hardy, py::arg("probs"), py::arg("sigmas"), py::arg("bound") = 0.0);
    m.def("propagate_chsh", &propagate_chsh, py::arg("value"), py::arg("sigma"), py::arg("bound") = 2.0);
    m.def(
        "sample_counts",
        [](const std::vector<JointDistribution>& dists, double mean_total, std::uint64_t seed) {
            return sample_counts(as_distribution_set(dists), mean_total, seed).counts;
        },
        py::arg("dists"), py::arg("mean_total"), py::arg("seed"));
    m.def(
        "monte_carlo_resample",
        [](const std::vector<JointDistribution>& dists, double mean_total, int trials, std::uint64_t seed,
           Quantity q) { return monte_carlo_resample(as_distribution_set(dists), mean_total, trials, seed, q); },
        py::arg("dists"), py::arg("mean_total"), py::arg("trials"), py::arg("seed"), py::arg("quantity"));

    // cli
    m.def("list_presets", &list_presets);
    m.def(
        "run_experiment",
        [](const std::string& experiment, const std::string& config_path, bool structured) {
            auto kind = parse_experiment_name(experiment);
            if (!kind) {
                throw ConfigError("unknown experiment '" + experiment + "'");
            }
            ExperimentConfig cfg = config_path.empty() ? default_config(*kind) : load_config(config_path, *kind);
            Report report = run(cfg);
            return structured ? to_structured(report) : to_csv(report);
        },
        py::arg("experiment"), py::arg("config_path") = "", py::arg("structured") = false);
}
