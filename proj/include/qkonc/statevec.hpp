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
 * Dense pure-state simulator. Amplitudes are stored flat with qubit 0 as the
 * least-significant bit of the basis index. Density matrices are never built:
 * every state here is pure, so Tr(rho rho') reduces to |<a|b>|^2.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qkonc {

using Amplitude = std::complex<double>;

enum class GateKind : std::uint8_t {
    H,
    X,
    RX,
    RY,
    RZ,
    RZZ,
    CNOT,
    CZ,
    GlobalRX,  // RX(angle) on every qubit
    GlobalRZZ, // RZZ(2 * angle) on every unordered qubit pair
};

std::string_view to_string(GateKind kind) noexcept;
std::optional<GateKind> gate_kind_from_string(std::string_view name) noexcept;

/// Number of explicit target qubits: 1, 2, or 0 for the global gates.
int gate_arity(GateKind kind) noexcept;
bool is_parametric(GateKind kind) noexcept;

/// Rotation exp(-i angle G / 2) with G a single Pauli string (eigenvalues
/// +-1). These are the gates the parameter-shift rule is exact for.
bool is_single_pauli_rotation(GateKind kind) noexcept;

class StateVector {
  public:
    /// |0...0> on n_qubits qubits.
    explicit StateVector(int n_qubits);

    /// Takes ownership of explicit amplitudes; the length must be a power of
    /// two and the norm must be 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return amplitudes_.size();
    }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept {
        return amplitudes_;
    }
    Amplitude operator[](std::size_t index) const {
        return amplitudes_[index];
    }

    [[nodiscard]] double norm_squared() const noexcept;

    friend void apply_gate(StateVector &state, GateKind kind,
                           std::span<const int> qubits, double angle);

  private:
    StateVector() = default;

    int n_qubits_ = 0;
    std::vector<Amplitude> amplitudes_;
};

/// Applies one gate in place. `qubits` must hold gate_arity(kind) distinct
/// indices in [0, n_qubits); `angle` is ignored for non-parametric gates but
/// must still be finite.
void apply_gate(StateVector &state, GateKind kind, std::span<const int> qubits,
                double angle = 0.0);

inline void apply_gate(StateVector &state, GateKind kind,
                       std::initializer_list<int> qubits, double angle = 0.0) {
    apply_gate(state, kind, std::span<const int>(qubits.begin(), qubits.size()),
               angle);
}

Amplitude inner_product(const StateVector &bra, const StateVector &ket);

/// |<a|b>|^2. Symmetric in its arguments bit for bit.
double fidelity(const StateVector &a, const StateVector &b);

/// Probability of reading |0...0>, i.e. <psi|rho_0|psi>.
double prob_all_zeros(const StateVector &state);

/// Relabels qubits: qubit q of the input becomes qubit permutation[q] of the
/// output.
StateVector permute_qubits(const StateVector &state,
                           std::span<const int> permutation);

} // namespace qkonc
