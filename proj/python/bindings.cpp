// Copyright 2026 The qkonc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings. Reports cross the boundary as plain dicts (via their JSON
// form); matrices as float64 numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <vector>

#include <json.hpp>

#include "qkonc/circuit.hpp"
#include "qkonc/concentration.hpp"
#include "qkonc/data.hpp"
#include "qkonc/error.hpp"
#include "qkonc/experiments.hpp"
#include "qkonc/kernel.hpp"
#include "qkonc/vqa.hpp"

namespace py = pybind11;
using namespace qkonc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::object to_py(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_py(const py::object &o) {
    return nlohmann::json::parse(
        py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Matrix to_matrix(const Array &a) {
    if (a.ndim() != 2)
        throw Error(Errc::dimension_mismatch, "expected a 2-D array");
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
    return m;
}

Array to_array(const Matrix &m) {
    Array a({m.rows(), m.cols()});
    auto w = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
    return a;
}

AnsatzSpec make_spec(const std::string &family, int n_qubits, int depth,
                     const std::string &entanglement, std::uint64_t seed) {
    return {ansatz_family_from_string(family), n_qubits, depth,
            entanglement_from_string(entanglement), seed};
}

CostSpec make_cost(const Circuit &circuit, const std::string &mode) {
    if (mode == "variational")
        return CostSpec::variational_only(circuit);
    if (mode == "kernel")
        return CostSpec::kernel_construction(circuit);
    throw Error(Errc::invalid_argument, "mode must be 'variational' or 'kernel'");
}

py::tuple dataset_tuple(const Dataset &ds) {
    py::object labels = py::none();
    if (ds.labels)
        labels = py::cast(*ds.labels);
    return py::make_tuple(to_array(ds.features), labels, to_py(ds.provenance));
}

} // namespace

PYBIND11_MODULE(_qkonc, m) {
    m.doc() = "Exponential-concentration diagnostics for quantum fidelity kernels";

    static py::exception<Error> qkonc_error(m, "QkoncError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error &e) {
            const std::string msg = std::string(to_string(e.code())) + ": " + e.what();
            qkonc_error(msg.c_str());
        }
    });

    py::class_<AnsatzSpec>(m, "AnsatzSpec")
        .def(py::init(&make_spec), py::arg("family"), py::arg("n_qubits"),
             py::arg("depth") = 1, py::arg("entanglement") = "full", py::arg("seed") = 0)
        .def_property_readonly("family",
                               [](const AnsatzSpec &s) { return std::string(to_string(s.family)); })
        .def_readonly("n_qubits", &AnsatzSpec::n_qubits)
        .def_readonly("depth", &AnsatzSpec::depth)
        .def_readonly("seed", &AnsatzSpec::seed)
        .def("to_dict", [](const AnsatzSpec &s) { return to_py(to_json(s)); })
        .def("__repr__", [](const AnsatzSpec &s) {
            return "AnsatzSpec(" + to_json(s).dump() + ")";
        });

    py::class_<Circuit>(m, "Circuit")
        .def_property_readonly("n_qubits", &Circuit::n_qubits)
        .def_property_readonly("n_data_slots", &Circuit::n_data_slots)
        .def_property_readonly("n_theta_slots", &Circuit::n_theta_slots)
        .def("adjoint", &Circuit::adjoint)
        .def("swap_roles", &Circuit::swap_roles)
        .def("to_dict", [](const Circuit &c) { return to_py(to_json(c)); })
        .def_static("from_dict", [](const py::object &o) { return circuit_from_json(from_py(o)); });

    m.def("build_ansatz", &build_ansatz, py::arg("spec"));
    m.def("build_encoding", &build_encoding, py::arg("spec"),
          "Circuit with data slots only, ready for kernel evaluation.");

    m.def(
        "simulate",
        [](const Circuit &c, std::vector<double> x, std::vector<double> theta) {
            const StateVector s = simulate(c, x, theta);
            py::array_t<std::complex<double>> out(
                std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.dimension())});
            std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.mutable_data());
            return out;
        },
        py::arg("circuit"), py::arg("x") = std::vector<double>{},
        py::arg("theta") = std::vector<double>{},
        "Amplitudes of the prepared state; qubit 0 is the least significant bit.");

    m.def(
        "kernel_entry",
        [](const Circuit &c, std::vector<double> x, std::vector<double> y) {
            return kernel_entry(c, x, y);
        },
        py::arg("circuit"), py::arg("x"), py::arg("x_prime"));
    m.def(
        "kernel_entry_compiled",
        [](const Circuit &c, std::vector<double> x, std::vector<double> y) {
            return kernel_entry_compiled(c, x, y);
        },
        py::arg("circuit"), py::arg("x"), py::arg("x_prime"));
    m.def(
        "gram",
        [](const Circuit &c, const Array &data, std::uint64_t shots, std::uint64_t seed,
           unsigned threads) {
            const Matrix d = to_matrix(data);
            GramMatrix g;
            {
                py::gil_scoped_release release;
                g = gram(c, d, {shots, seed, threads});
            }
            return to_array(g.entries);
        },
        py::arg("circuit"), py::arg("data"), py::arg("shots") = 0, py::arg("seed") = 0,
        py::arg("threads") = 0);

    m.def(
        "cost",
        [](const Circuit &c, std::vector<double> theta, std::vector<double> x,
           const std::string &mode) { return cost(make_cost(c, mode), theta, x); },
        py::arg("circuit"), py::arg("theta"), py::arg("x") = std::vector<double>{},
        py::arg("mode") = "variational");
    m.def(
        "gradient",
        [](const Circuit &c, std::vector<double> theta, std::vector<double> x,
           const std::string &mode, const std::string &rule, double step) {
            GradientMethod gm{GradientRule::automatic, step};
            if (rule == "parameter_shift")
                gm.rule = GradientRule::parameter_shift;
            else if (rule == "central_difference")
                gm.rule = GradientRule::central_difference;
            else if (rule != "automatic")
                throw Error(Errc::invalid_argument, "unknown gradient rule " + rule);
            return gradient(make_cost(c, mode), theta, x, gm);
        },
        py::arg("circuit"), py::arg("theta"), py::arg("x") = std::vector<double>{},
        py::arg("mode") = "variational", py::arg("rule") = "automatic",
        py::arg("step") = 1e-5);
    m.def(
        "bp_variance",
        [](const Circuit &c, std::vector<double> x, const std::string &mode,
           std::size_t samples, std::uint64_t seed, unsigned threads) {
            const CostSpec spec = make_cost(c, mode);
            BpVarianceReport r;
            {
                py::gil_scoped_release release;
                r = bp_variance(spec, x, {samples, seed, threads});
            }
            py::list per_slot;
            for (const auto &s : r.per_slot)
                per_slot.append(py::dict(py::arg("mean") = s.mean, py::arg("variance") = s.variance,
                                         py::arg("se_variance") = s.se_variance));
            return py::dict(py::arg("max_variance") = r.max_variance,
                            py::arg("max_variance_se") = r.max_variance_se,
                            py::arg("argmax_slot") = r.argmax_slot,
                            py::arg("mean_variance") = r.mean_variance,
                            py::arg("samples") = r.samples, py::arg("per_slot") = per_slot);
        },
        py::arg("circuit"), py::arg("x") = std::vector<double>{},
        py::arg("mode") = "variational", py::arg("samples") = 1000, py::arg("seed") = 0,
        py::arg("threads") = 0);
    m.def(
        "sample_costs",
        [](const Circuit &c, std::vector<double> x, const std::string &mode,
           std::size_t samples, std::uint64_t seed, unsigned threads) {
            return sample_costs(make_cost(c, mode), x, {samples, seed, threads});
        },
        py::arg("circuit"), py::arg("x") = std::vector<double>{},
        py::arg("mode") = "variational", py::arg("samples") = 1000, py::arg("seed") = 0,
        py::arg("threads") = 0);

    m.def(
        "concentration_report",
        [](const Array &g, std::vector<double> deltas) {
            return to_py(to_json(concentration_report(GramMatrix{to_matrix(g), {}}, deltas)));
        },
        py::arg("gram"), py::arg("deltas") = std::vector<double>{});
    m.def(
        "conditional_report",
        [](std::vector<std::vector<double>> rows, std::vector<double> deltas) {
            return to_py(to_json(concentration_report(ConditionalSamples{std::move(rows)}, deltas)));
        },
        py::arg("rows"), py::arg("deltas") = std::vector<double>{});
    m.def(
        "lemma_check",
        [](std::vector<std::vector<double>> rows, double sigmas) {
            return to_py(to_json(lemma_check(ConditionalSamples{std::move(rows)}, sigmas)));
        },
        py::arg("rows"), py::arg("sigmas") = 3.0);
    m.def(
        "fit_decay",
        [](std::vector<int> ns, std::vector<double> variances) {
            if (ns.size() != variances.size())
                throw Error(Errc::dimension_mismatch, "ns and variances differ in length");
            std::vector<DecayPoint> pts;
            for (std::size_t i = 0; i < ns.size(); ++i)
                pts.push_back({ns[i], variances[i]});
            return to_py(to_json(fit_decay(pts)));
        },
        py::arg("ns"), py::arg("variances"));
    m.def(
        "spectrum_flatness",
        [](const Array &a) { return to_py(to_json(spectrum_flatness(to_matrix(a)))); },
        py::arg("matrix"));
    m.def(
        "theorem_check",
        [](const AnsatzSpec &spec, std::size_t anchors, std::size_t draws, std::uint64_t seed,
           unsigned threads) {
            TheoremCheckConfig cfg;
            cfg.anchors = anchors;
            cfg.draws = draws;
            cfg.seed = seed;
            cfg.threads = threads;
            TheoremReport r;
            {
                py::gil_scoped_release release;
                r = theorem_check(spec, cfg);
            }
            return to_py(to_json(r));
        },
        py::arg("spec"), py::arg("anchors") = 20, py::arg("draws") = 200, py::arg("seed") = 0,
        py::arg("threads") = 0);

    m.def("load_idx", [](const std::string &images, const std::string &labels) {
        return dataset_tuple(load_idx(images, labels));
    });
    m.def("load_csv", [](const std::string &path) { return dataset_tuple(load_csv(path)); });
    m.def(
        "synthetic_uniform",
        [](std::size_t n, std::size_t d, std::uint64_t seed) {
            return to_array(synthetic_uniform(n, d, seed).features);
        },
        py::arg("n_points"), py::arg("d"), py::arg("seed"));
    m.def(
        "pca_reduce",
        [](const Array &features, std::size_t k) {
            Dataset ds;
            ds.features = to_matrix(features);
            return to_array(pca_reduce(ds, k).features);
        },
        py::arg("features"), py::arg("k"));
    m.def(
        "normalize_range",
        [](const Array &features) {
            Dataset ds;
            ds.features = to_matrix(features);
            return to_array(normalize_range(ds).features);
        },
        py::arg("features"));

    m.def(
        "run_command",
        [](const std::string &command, const py::object &config) {
            const SweepConfig c = sweep_config_from_json(from_py(config), {});
            CommandOutcome out;
            {
                py::gil_scoped_release release;
                if (command == "gram")
                    out = run_gram(c);
                else if (command == "sweep")
                    out = run_sweep(c);
                else if (command == "verify")
                    out = run_verify(c);
                else if (command == "bp-scan")
                    out = run_bp_scan(c);
                else if (command == "spectrum")
                    out = run_spectrum(c);
                else
                    throw Error(Errc::invalid_argument, "unknown command " + command);
            }
            return py::dict(py::arg("exit_code") = out.exit_code, py::arg("files") = out.files,
                            py::arg("failures") = out.failures,
                            py::arg("summary") = to_py(out.summary));
        },
        py::arg("command"), py::arg("config"),
        "Runs a CLI subcommand with a config dict (same keys as the JSON config file).");
}
