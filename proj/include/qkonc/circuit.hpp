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

/**
 * @file
 * Circuit IR with symbolic parameter slots, binding, and the ansatz catalog.
 *
 * A gate angle comes from one of:
 *   - a constant,
 *   - scale * x[i]        (DataComponent),
 *   - scale * theta[i]    (Theta),
 *   - scale * prod_k (offset_k - v[i_k]) where v is x or theta (DataExpr).
 *
 * The same template can serve as a data encoder U(x) or as a variational
 * block W(theta); swap_roles() exchanges the two vectors, which is how the
 * kernel is built from a variational ansatz by substituting data for
 * parameters.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qkonc/statevec.hpp"

namespace qkonc {

struct Constant {
    double value = 0.0;
    friend bool operator==(const Constant &, const Constant &) = default;
};

struct DataComponent {
    int index = 0;
    double scale = 1.0;
    friend bool operator==(const DataComponent &,
                           const DataComponent &) = default;
};

struct Theta {
    int index = 0;
    double scale = 1.0;
    friend bool operator==(const Theta &, const Theta &) = default;
};

enum class SlotSource : std::uint8_t { data, theta };

struct ExprFactor {
    int index = 0;
    double offset = 0.0;
    friend bool operator==(const ExprFactor &, const ExprFactor &) = default;
};

/// scale * prod_k (offset_k - v[index_k]).
struct DataExpr {
    double scale = 1.0;
    std::vector<ExprFactor> factors;
    SlotSource source = SlotSource::data;
    friend bool operator==(const DataExpr &, const DataExpr &) = default;
};

using ParamSlot =
    std::variant<std::monostate, Constant, DataComponent, Theta, DataExpr>;

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    ParamSlot slot;
    bool adjoint = false; // rotation angle is negated at bind time
    friend bool operator==(const Gate &, const Gate &) = default;
};

struct BoundGate {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    double angle = 0.0;
    friend bool operator==(const BoundGate &, const BoundGate &) = default;
};

enum class AnsatzFamily : std::uint8_t {
    HavlicekZZ,
    PermInvariant,
    HardwareEfficient,
    ProductRX,
    Identity, // no gates; n data slots. Degenerate fixture for harnesses.
};

enum class Entanglement : std::uint8_t { full, linear };

std::string_view to_string(AnsatzFamily family) noexcept;
std::string_view to_string(Entanglement entanglement) noexcept;
// Accepts canonical names plus CLI aliases (havlicek, perm, hwe, product-rx).
AnsatzFamily ansatz_family_from_string(std::string_view name);
Entanglement entanglement_from_string(std::string_view name);

struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::HavlicekZZ;
    int n_qubits = 2;
    int depth = 1;
    Entanglement entanglement = Entanglement::full;
    std::uint64_t seed = 0; // HardwareEfficient axis draws only
    friend bool operator==(const AnsatzSpec &, const AnsatzSpec &) = default;
};

/// Immutable gate list with slot bookkeeping. Validated on construction.
class Circuit {
  public:
    Circuit(int n_qubits, int n_data_slots, int n_theta_slots,
            std::vector<Gate> gates,
            std::optional<AnsatzSpec> origin = std::nullopt);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] int n_data_slots() const noexcept { return n_data_slots_; }
    [[nodiscard]] int n_theta_slots() const noexcept { return n_theta_slots_; }
    [[nodiscard]] std::span<const Gate> gates() const noexcept { return gates_; }
    [[nodiscard]] const std::optional<AnsatzSpec> &origin() const noexcept {
        return origin_;
    }

    /// Reversed gate order with every rotation negated.
    [[nodiscard]] Circuit adjoint() const;

    /// Data slots become theta slots and vice versa.
    [[nodiscard]] Circuit swap_roles() const;

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    int n_qubits_;
    int n_data_slots_;
    int n_theta_slots_;
    std::vector<Gate> gates_;
    std::optional<AnsatzSpec> origin_;
};

/// Resolves every slot. Errors on length mismatch or non-finite entries.
std::vector<BoundGate> bind(const Circuit &circuit, std::span<const double> x,
                            std::span<const double> theta);

/// Applies bound gates in order; throws norm_drift if the norm has moved by
/// more than 1e-10 at the end.
void run(StateVector &state, std::span<const BoundGate> gates);

/// circuit(x, theta)|0...0>.
StateVector simulate(const Circuit &circuit, std::span<const double> x,
                     std::span<const double> theta = {});

Circuit build_havlicek(int n, int depth = 2,
                       Entanglement entanglement = Entanglement::full);
Circuit build_perm_invariant(int n, int depth);
Circuit build_hardware_efficient(int n, int depth, std::uint64_t seed);
Circuit build_product_rx(int n, int depth = 1);
Circuit build_identity(int n);

/// Native form: HardwareEfficient exposes theta slots, the rest data slots.
Circuit build_ansatz(const AnsatzSpec &spec);

/// Data-encoding form W(x): every parameter is a data slot.
Circuit build_encoding(const AnsatzSpec &spec);

nlohmann::json to_json(const AnsatzSpec &spec);
AnsatzSpec ansatz_from_json(const nlohmann::json &j);
nlohmann::json to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::json &j);

} // namespace qkonc
