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

#include "qkonc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qkonc/error.hpp"
#include "qkonc/rng.hpp"

namespace qkonc {

namespace {

using nlohmann::json;

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

void check_slot(const Gate &gate, int n_data, int n_theta) {
    const bool parametric = is_parametric(gate.kind);
    const bool empty = std::holds_alternative<std::monostate>(gate.slot);
    require(parametric != empty, Errc::invalid_argument,
            std::string(to_string(gate.kind)) +
                (parametric ? " needs a parameter slot"
                            : " takes no parameter slot"));
    auto in_range = [](int index, int count, const char *what) {
        require(index >= 0 && index < count, Errc::invalid_argument,
                std::string(what) + " slot index " + std::to_string(index) +
                    " outside [0, " + std::to_string(count) + ")");
    };
    std::visit(Overloaded{
                   [](std::monostate) {},
                   [](const Constant &c) {
                       require(std::isfinite(c.value), Errc::non_finite,
                               "non-finite constant angle");
                   },
                   [&](const DataComponent &d) {
                       in_range(d.index, n_data, "data");
                   },
                   [&](const Theta &t) { in_range(t.index, n_theta, "theta"); },
                   [&](const DataExpr &e) {
                       const int count =
                           e.source == SlotSource::data ? n_data : n_theta;
                       for (const ExprFactor &f : e.factors) {
                           in_range(f.index, count, "expression");
                       }
                   },
               },
               gate.slot);
}

void check_finite(std::span<const double> values, const char *what) {
    for (const double v : values) {
        require(std::isfinite(v), Errc::non_finite,
                std::string("non-finite entry in ") + what);
    }
}

double resolve(const ParamSlot &slot, std::span<const double> x,
               std::span<const double> theta) {
    auto idx = [](int i) { return static_cast<std::size_t>(i); };
    return std::visit(
        Overloaded{
            [](std::monostate) { return 0.0; },
            [](const Constant &c) { return c.value; },
            [&](const DataComponent &d) { return d.scale * x[idx(d.index)]; },
            [&](const Theta &t) { return t.scale * theta[idx(t.index)]; },
            [&](const DataExpr &e) {
                const auto values = e.source == SlotSource::data ? x : theta;
                double product = e.scale;
                for (const ExprFactor &f : e.factors) {
                    product *= f.offset - values[idx(f.index)];
                }
                return product;
            },
        },
        slot);
}

ParamSlot swapped(const ParamSlot &slot) {
    return std::visit(
        Overloaded{
            [](std::monostate) -> ParamSlot { return std::monostate{}; },
            [](const Constant &c) -> ParamSlot { return c; },
            [](const DataComponent &d) -> ParamSlot {
                return Theta{d.index, d.scale};
            },
            [](const Theta &t) -> ParamSlot {
                return DataComponent{t.index, t.scale};
            },
            [](const DataExpr &e) -> ParamSlot {
                DataExpr out = e;
                out.source = e.source == SlotSource::data ? SlotSource::theta
                                                          : SlotSource::data;
                return out;
            },
        },
        slot);
}

Gate one(GateKind kind, int q, ParamSlot slot = std::monostate{}) {
    return Gate{kind, {q}, std::move(slot), false};
}

Gate two(GateKind kind, int a, int b, ParamSlot slot = std::monostate{}) {
    return Gate{kind, {a, b}, std::move(slot), false};
}

Gate global(GateKind kind, ParamSlot slot) {
    return Gate{kind, {}, std::move(slot), false};
}

} // namespace

std::string_view to_string(AnsatzFamily family) noexcept {
    switch (family) {
    case AnsatzFamily::HavlicekZZ:
        return "HavlicekZZ";
    case AnsatzFamily::PermInvariant:
        return "PermInvariant";
    case AnsatzFamily::HardwareEfficient:
        return "HardwareEfficient";
    case AnsatzFamily::ProductRX:
        return "ProductRX";
    case AnsatzFamily::Identity:
        return "Identity";
    }
    return "?";
}

std::string_view to_string(Entanglement entanglement) noexcept {
    return entanglement == Entanglement::full ? "full" : "linear";
}

AnsatzFamily ansatz_family_from_string(std::string_view name) {
    if (name == "HavlicekZZ" || name == "havlicek") {
        return AnsatzFamily::HavlicekZZ;
    }
    if (name == "PermInvariant" || name == "perm" ||
        name == "perm-invariant") {
        return AnsatzFamily::PermInvariant;
    }
    if (name == "HardwareEfficient" || name == "hwe" ||
        name == "hardware-efficient") {
        return AnsatzFamily::HardwareEfficient;
    }
    if (name == "ProductRX" || name == "product-rx" || name == "product") {
        return AnsatzFamily::ProductRX;
    }
    if (name == "Identity" || name == "identity") {
        return AnsatzFamily::Identity;
    }
    throw Error(Errc::invalid_argument,
                "unknown ansatz family '" + std::string(name) + "'");
}

Entanglement entanglement_from_string(std::string_view name) {
    if (name == "full") {
        return Entanglement::full;
    }
    if (name == "linear") {
        return Entanglement::linear;
    }
    throw Error(Errc::invalid_argument,
                "unknown entanglement '" + std::string(name) + "'");
}

Circuit::Circuit(int n_qubits, int n_data_slots, int n_theta_slots,
                 std::vector<Gate> gates, std::optional<AnsatzSpec> origin)
    : n_qubits_(n_qubits), n_data_slots_(n_data_slots),
      n_theta_slots_(n_theta_slots), gates_(std::move(gates)),
      origin_(std::move(origin)) {
    require(n_qubits >= 1, Errc::invalid_argument, "circuit needs >= 1 qubit");
    require(n_data_slots >= 0 && n_theta_slots >= 0, Errc::invalid_argument,
            "slot counts must be nonnegative");
    for (const Gate &gate : gates_) {
        require(static_cast<int>(gate.qubits.size()) == gate_arity(gate.kind),
                Errc::invalid_argument,
                std::string(to_string(gate.kind)) + " has wrong target count");
        for (const int q : gate.qubits) {
            require(q >= 0 && q < n_qubits, Errc::qubit_out_of_range,
                    "gate target " + std::to_string(q) + " outside circuit");
        }
        require(gate.qubits.size() != 2 || gate.qubits[0] != gate.qubits[1],
                Errc::invalid_argument,
                "two-qubit gate targets must be distinct");
        check_slot(gate, n_data_slots, n_theta_slots);
    }
}

Circuit Circuit::adjoint() const {
    std::vector<Gate> reversed(gates_.rbegin(), gates_.rend());
    for (Gate &gate : reversed) {
        if (is_parametric(gate.kind)) {
            gate.adjoint = !gate.adjoint;
        }
    }
    return {n_qubits_, n_data_slots_, n_theta_slots_, std::move(reversed),
            origin_};
}

Circuit Circuit::swap_roles() const {
    std::vector<Gate> gates = gates_;
    for (Gate &gate : gates) {
        gate.slot = swapped(gate.slot);
    }
    return {n_qubits_, n_theta_slots_, n_data_slots_, std::move(gates),
            origin_};
}

std::vector<BoundGate> bind(const Circuit &circuit, std::span<const double> x,
                            std::span<const double> theta) {
    require(static_cast<int>(x.size()) == circuit.n_data_slots(),
            Errc::dimension_mismatch,
            "data vector has " + std::to_string(x.size()) +
                " entries, circuit expects " +
                std::to_string(circuit.n_data_slots()));
    require(static_cast<int>(theta.size()) == circuit.n_theta_slots(),
            Errc::dimension_mismatch,
            "parameter vector has " + std::to_string(theta.size()) +
                " entries, circuit expects " +
                std::to_string(circuit.n_theta_slots()));
    check_finite(x, "data vector");
    check_finite(theta, "parameter vector");

    std::vector<BoundGate> bound;
    bound.reserve(circuit.gates().size());
    for (const Gate &gate : circuit.gates()) {
        double angle = resolve(gate.slot, x, theta);
        if (gate.adjoint) {
            angle = -angle;
        }
        bound.push_back(BoundGate{gate.kind, gate.qubits, angle});
    }
    return bound;
}

void run(StateVector &state, std::span<const BoundGate> gates) {
    for (const BoundGate &gate : gates) {
        apply_gate(state, gate.kind, gate.qubits, gate.angle);
    }
    const double drift = std::abs(state.norm_squared() - 1.0);
    require(drift <= 1e-10, Errc::norm_drift,
            "state norm drifted by " + std::to_string(drift));
}

StateVector simulate(const Circuit &circuit, std::span<const double> x,
                     std::span<const double> theta) {
    const auto gates = bind(circuit, x, theta);
    StateVector state(circuit.n_qubits());
    run(state, gates);
    return state;
}

Circuit build_havlicek(int n, int depth, Entanglement entanglement) {
    require(n >= 1, Errc::invalid_argument, "Havlicek ansatz needs n >= 1");
    require(depth >= 1, Errc::invalid_argument, "depth must be >= 1");
    constexpr double pi = std::numbers::pi;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        if (entanglement == Entanglement::linear) {
            if (i + 1 < n) {
                pairs.emplace_back(i, i + 1);
            }
        } else {
            for (int j = i + 1; j < n; ++j) {
                pairs.emplace_back(i, j);
            }
        }
    }
    std::vector<Gate> gates;
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q) {
            gates.push_back(one(GateKind::H, q));
        }
        for (int q = 0; q < n; ++q) {
            gates.push_back(one(GateKind::RZ, q, DataComponent{q, 2.0}));
        }
        for (const auto &[i, j] : pairs) {
            gates.push_back(
                two(GateKind::RZZ, i, j,
                    DataExpr{2.0, {{i, pi}, {j, pi}}, SlotSource::data}));
        }
    }
    return {n, n, 0, std::move(gates),
            AnsatzSpec{AnsatzFamily::HavlicekZZ, n, depth, entanglement, 0}};
}

Circuit build_perm_invariant(int n, int depth) {
    require(n >= 2, Errc::invalid_argument,
            "permutation-invariant ansatz needs n >= 2");
    require(depth >= 1, Errc::invalid_argument, "depth must be >= 1");
    std::vector<Gate> gates;
    for (int layer = 1; layer <= depth; ++layer) {
        gates.push_back(global(GateKind::GlobalRX,
                               DataComponent{(2 * layer - 2) % n, 1.0}));
        gates.push_back(global(GateKind::GlobalRZZ,
                               DataComponent{(2 * layer - 1) % n, 1.0}));
    }
    return {n, n, 0, std::move(gates),
            AnsatzSpec{AnsatzFamily::PermInvariant, n, depth,
                       Entanglement::full, 0}};
}

Circuit build_hardware_efficient(int n, int depth, std::uint64_t seed) {
    require(n >= 1, Errc::invalid_argument, "hardware-efficient needs n >= 1");
    require(depth >= 1, Errc::invalid_argument, "depth must be >= 1");
    constexpr GateKind axes[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
    Rng rng = make_stream(seed, 0x6877u);
    std::vector<Gate> gates;
    int slot = 0;
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q) {
            gates.push_back(
                one(axes[uniform_index(rng, 3)], q, Theta{slot++, 1.0}));
        }
        for (int q = 0; q + 1 < n; ++q) {
            gates.push_back(two(GateKind::CZ, q, q + 1));
        }
    }
    return {n, 0, slot, std::move(gates),
            AnsatzSpec{AnsatzFamily::HardwareEfficient, n, depth,
                       Entanglement::linear, seed}};
}

Circuit build_product_rx(int n, int depth) {
    require(n >= 1, Errc::invalid_argument, "ProductRX needs n >= 1");
    require(depth >= 1, Errc::invalid_argument, "depth must be >= 1");
    std::vector<Gate> gates;
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q) {
            gates.push_back(one(GateKind::RX, q, DataComponent{q, 1.0}));
        }
    }
    return {n, n, 0, std::move(gates),
            AnsatzSpec{AnsatzFamily::ProductRX, n, depth, Entanglement::full,
                       0}};
}

Circuit build_identity(int n) {
    return {n, n, 0, {},
            AnsatzSpec{AnsatzFamily::Identity, n, 1, Entanglement::full, 0}};
}

Circuit build_ansatz(const AnsatzSpec &spec) {
    switch (spec.family) {
    case AnsatzFamily::HavlicekZZ:
        return build_havlicek(spec.n_qubits, spec.depth, spec.entanglement);
    case AnsatzFamily::PermInvariant:
        return build_perm_invariant(spec.n_qubits, spec.depth);
    case AnsatzFamily::HardwareEfficient:
        return build_hardware_efficient(spec.n_qubits, spec.depth, spec.seed);
    case AnsatzFamily::ProductRX:
        return build_product_rx(spec.n_qubits, spec.depth);
    case AnsatzFamily::Identity:
        return build_identity(spec.n_qubits);
    }
    throw Error(Errc::invalid_argument, "unknown ansatz family");
}

Circuit build_encoding(const AnsatzSpec &spec) {
    Circuit circuit = build_ansatz(spec);
    if (circuit.n_theta_slots() > 0 && circuit.n_data_slots() == 0) {
        return circuit.swap_roles();
    }
    return circuit;
}

// -- JSON --------------------------------------------------------------------

json to_json(const AnsatzSpec &spec) {
    return json{{"family", to_string(spec.family)},
                {"n_qubits", spec.n_qubits},
                {"depth", spec.depth},
                {"entanglement", to_string(spec.entanglement)},
                {"seed", spec.seed}};
}

AnsatzSpec ansatz_from_json(const json &j) {
    try {
        AnsatzSpec spec;
        spec.family =
            ansatz_family_from_string(j.at("family").get<std::string>());
        spec.n_qubits = j.at("n_qubits").get<int>();
        spec.depth = j.value("depth", 1);
        spec.entanglement =
            entanglement_from_string(j.value("entanglement", "full"));
        spec.seed = j.value("seed", std::uint64_t{0});
        return spec;
    } catch (const json::exception &e) {
        throw Error(Errc::format_error,
                    std::string("bad ansatz JSON: ") + e.what());
    }
}

namespace {

json slot_to_json(const ParamSlot &slot) {
    return std::visit(
        Overloaded{
            [](std::monostate) { return json{{"type", "none"}}; },
            [](const Constant &c) {
                return json{{"type", "constant"}, {"value", c.value}};
            },
            [](const DataComponent &d) {
                return json{
                    {"type", "data"}, {"index", d.index}, {"scale", d.scale}};
            },
            [](const Theta &t) {
                return json{
                    {"type", "theta"}, {"index", t.index}, {"scale", t.scale}};
            },
            [](const DataExpr &e) {
                json factors = json::array();
                for (const ExprFactor &f : e.factors) {
                    factors.push_back(
                        json{{"index", f.index}, {"offset", f.offset}});
                }
                return json{{"type", "expr"},
                            {"scale", e.scale},
                            {"source", e.source == SlotSource::data ? "data"
                                                                    : "theta"},
                            {"factors", factors}};
            },
        },
        slot);
}

ParamSlot slot_from_json(const json &j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "none") {
        return std::monostate{};
    }
    if (type == "constant") {
        return Constant{j.at("value").get<double>()};
    }
    if (type == "data") {
        return DataComponent{j.at("index").get<int>(), j.value("scale", 1.0)};
    }
    if (type == "theta") {
        return Theta{j.at("index").get<int>(), j.value("scale", 1.0)};
    }
    if (type == "expr") {
        DataExpr e;
        e.scale = j.at("scale").get<double>();
        const auto source = j.value("source", std::string("data"));
        require(source == "data" || source == "theta", Errc::format_error,
                "expression source must be data or theta");
        e.source = source == "data" ? SlotSource::data : SlotSource::theta;
        for (const json &f : j.at("factors")) {
            e.factors.push_back(
                {f.at("index").get<int>(), f.at("offset").get<double>()});
        }
        return e;
    }
    throw Error(Errc::format_error, "unknown slot type '" + type + "'");
}

} // namespace

json to_json(const Circuit &circuit) {
    json gates = json::array();
    for (const Gate &gate : circuit.gates()) {
        gates.push_back(json{{"kind", to_string(gate.kind)},
                             {"qubits", gate.qubits},
                             {"slot", slot_to_json(gate.slot)},
                             {"adjoint", gate.adjoint}});
    }
    json out{{"n_qubits", circuit.n_qubits()},
             {"n_data_slots", circuit.n_data_slots()},
             {"n_theta_slots", circuit.n_theta_slots()},
             {"gates", gates}};
    out["origin"] = circuit.origin() ? to_json(*circuit.origin()) : json();
    return out;
}

Circuit circuit_from_json(const json &j) {
    try {
        std::vector<Gate> gates;
        for (const json &g : j.at("gates")) {
            const auto name = g.at("kind").get<std::string>();
            const auto kind = gate_kind_from_string(name);
            require(kind.has_value(), Errc::format_error,
                    "unknown gate kind '" + name + "'");
            gates.push_back(Gate{*kind, g.at("qubits").get<std::vector<int>>(),
                                 slot_from_json(g.at("slot")),
                                 g.value("adjoint", false)});
        }
        std::optional<AnsatzSpec> origin;
        if (j.contains("origin") && !j.at("origin").is_null()) {
            origin = ansatz_from_json(j.at("origin"));
        }
        return {j.at("n_qubits").get<int>(), j.at("n_data_slots").get<int>(),
                j.at("n_theta_slots").get<int>(), std::move(gates), origin};
    } catch (const json::exception &e) {
        throw Error(Errc::format_error,
                    std::string("bad circuit JSON: ") + e.what());
    }
}

} // namespace qkonc
