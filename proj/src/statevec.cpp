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

#include "qkonc/statevec.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "qkonc/error.hpp"

namespace qkonc {

namespace {

constexpr int kMaxQubits = 30;

// Plain complex product; std::complex operator* goes through the
// NaN-recovering libcall on GCC, which dominates the gate loops.
inline Amplitude cmul(Amplitude a, Amplitude b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

struct Mat2 {
    Amplitude m00, m01, m10, m11;
};

void apply_single(std::vector<Amplitude> &amps, int qubit, const Mat2 &m) {
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const Amplitude a0 = amps[k];
            const Amplitude a1 = amps[k + stride];
            amps[k] = cmul(m.m00, a0) + cmul(m.m01, a1);
            amps[k + stride] = cmul(m.m10, a0) + cmul(m.m11, a1);
        }
    }
}

// RX has the structure [[c, -is], [-is, c]]; exploiting it halves the flops
// of the hot GlobalRX loop.
void apply_rx(std::vector<Amplitude> &amps, int qubit, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const Amplitude a0 = amps[k];
            const Amplitude a1 = amps[k + stride];
            amps[k] = {c * a0.real() + s * a1.imag(),
                       c * a0.imag() - s * a1.real()};
            amps[k + stride] = {c * a1.real() + s * a0.imag(),
                                c * a1.imag() - s * a0.real()};
        }
    }
}

void apply_rz(std::vector<Amplitude> &amps, int qubit, double angle) {
    const Amplitude lo = std::polar(1.0, -angle / 2);
    const Amplitude hi = std::polar(1.0, angle / 2);
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        amps[k] = cmul((k & mask) != 0 ? hi : lo, amps[k]);
    }
}

void apply_rzz(std::vector<Amplitude> &amps, int a, int b, double angle) {
    const Amplitude same = std::polar(1.0, -angle / 2);
    const Amplitude differ = std::polar(1.0, angle / 2);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const bool parity = (((k >> a) ^ (k >> b)) & 1U) != 0;
        amps[k] = cmul(parity ? differ : same, amps[k]);
    }
}

void apply_cnot(std::vector<Amplitude> &amps, int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if ((k & cmask) != 0 && (k & tmask) == 0) {
            std::swap(amps[k], amps[k | tmask]);
        }
    }
}

void apply_cz(std::vector<Amplitude> &amps, int a, int b) {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if ((k & mask) == mask) {
            amps[k] = -amps[k];
        }
    }
}

// prod_{i<j} RZZ_ij(2 angle) = exp(-i angle sum_{i<j} z_i z_j). With w ones
// in the index, sum_{i<j} z_i z_j = ((n - 2w)^2 - n) / 2, so the phase only
// depends on the Hamming weight.
void apply_global_rzz(std::vector<Amplitude> &amps, int n, double angle) {
    std::vector<Amplitude> phase(static_cast<std::size_t>(n) + 1);
    for (int w = 0; w <= n; ++w) {
        const double spin = n - 2.0 * w;
        const double pair_sum = (spin * spin - n) / 2.0;
        phase[static_cast<std::size_t>(w)] = std::polar(1.0, -angle * pair_sum);
    }
    for (std::size_t k = 0; k < amps.size(); ++k) {
        amps[k] = cmul(phase[static_cast<std::size_t>(std::popcount(k))],
                       amps[k]);
    }
}

} // namespace

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::H:
        return "H";
    case GateKind::X:
        return "X";
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::RZZ:
        return "RZZ";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::CZ:
        return "CZ";
    case GateKind::GlobalRX:
        return "GlobalRX";
    case GateKind::GlobalRZZ:
        return "GlobalRZZ";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) noexcept {
    constexpr std::array kinds{GateKind::H,         GateKind::X,
                               GateKind::RX,        GateKind::RY,
                               GateKind::RZ,        GateKind::RZZ,
                               GateKind::CNOT,      GateKind::CZ,
                               GateKind::GlobalRX,  GateKind::GlobalRZZ};
    for (const GateKind kind : kinds) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

int gate_arity(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RZZ:
    case GateKind::CNOT:
    case GateKind::CZ:
        return 2;
    case GateKind::GlobalRX:
    case GateKind::GlobalRZZ:
        return 0;
    default:
        return 1;
    }
}

bool is_parametric(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::CZ:
        return false;
    default:
        return true;
    }
}

bool is_single_pauli_rotation(GateKind kind) noexcept {
    return kind == GateKind::RX || kind == GateKind::RY ||
           kind == GateKind::RZ || kind == GateKind::RZZ;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    require(n_qubits >= 1 && n_qubits <= kMaxQubits, Errc::invalid_argument,
            "qubit count must lie in [1, 30], got " + std::to_string(n_qubits));
    amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t size = amplitudes.size();
    require(size >= 2 && std::has_single_bit(size), Errc::dimension_mismatch,
            "amplitude count must be a power of two >= 2");
    StateVector state;
    state.n_qubits_ = std::countr_zero(size);
    state.amplitudes_ = std::move(amplitudes);
    const double norm = state.norm_squared();
    require(std::isfinite(norm), Errc::non_finite, "non-finite amplitudes");
    require(std::abs(norm - 1.0) <= 1e-10, Errc::norm_drift,
            "amplitudes are not normalized");
    return state;
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const Amplitude &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void apply_gate(StateVector &state, GateKind kind, std::span<const int> qubits,
                double angle) {
    const int n = state.n_qubits();
    require(std::isfinite(angle), Errc::non_finite,
            "non-finite angle for gate " + std::string(to_string(kind)));
    const int arity = gate_arity(kind);
    require(static_cast<int>(qubits.size()) == arity,
            Errc::invalid_argument,
            std::string(to_string(kind)) + " expects " + std::to_string(arity) +
                " target(s), got " + std::to_string(qubits.size()));
    for (const int q : qubits) {
        require(q >= 0 && q < n, Errc::qubit_out_of_range,
                "qubit " + std::to_string(q) + " outside [0, " +
                    std::to_string(n) + ")");
    }
    require(arity != 2 || qubits[0] != qubits[1], Errc::invalid_argument,
            "two-qubit gate targets must be distinct");

    auto &amps = state.amplitudes_;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
    case GateKind::H:
        apply_single(amps, qubits[0],
                     {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2});
        break;
    case GateKind::X:
        apply_single(amps, qubits[0], {0.0, 1.0, 1.0, 0.0});
        break;
    case GateKind::RX:
        apply_rx(amps, qubits[0], angle);
        break;
    case GateKind::RY: {
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        apply_single(amps, qubits[0], {c, -s, s, c});
        break;
    }
    case GateKind::RZ:
        apply_rz(amps, qubits[0], angle);
        break;
    case GateKind::RZZ:
        apply_rzz(amps, qubits[0], qubits[1], angle);
        break;
    case GateKind::CNOT:
        apply_cnot(amps, qubits[0], qubits[1]);
        break;
    case GateKind::CZ:
        apply_cz(amps, qubits[0], qubits[1]);
        break;
    case GateKind::GlobalRX:
        for (int q = 0; q < n; ++q) {
            apply_rx(amps, q, angle);
        }
        break;
    case GateKind::GlobalRZZ:
        apply_global_rzz(amps, n, angle);
        break;
    }
}

Amplitude inner_product(const StateVector &bra, const StateVector &ket) {
    require(bra.n_qubits() == ket.n_qubits(), Errc::dimension_mismatch,
            "inner product of states with different qubit counts");
    // Accumulate conj(a) * b componentwise. Swapping the arguments yields the
    // same real part term for term and the exact negation of the imaginary
    // part, which keeps fidelity() bit-symmetric.
    double re = 0.0;
    double im = 0.0;
    const auto a = bra.amplitudes();
    const auto b = ket.amplitudes();
    for (std::size_t k = 0; k < a.size(); ++k) {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

double prob_all_zeros(const StateVector &state) {
    return std::norm(state[0]);
}

StateVector permute_qubits(const StateVector &state,
                           std::span<const int> permutation) {
    const int n = state.n_qubits();
    require(static_cast<int>(permutation.size()) == n,
            Errc::dimension_mismatch, "permutation length != qubit count");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const int p : permutation) {
        require(p >= 0 && p < n && !seen[static_cast<std::size_t>(p)],
                Errc::invalid_argument, "not a permutation of qubit labels");
        seen[static_cast<std::size_t>(p)] = true;
    }
    std::vector<Amplitude> out(state.dimension());
    for (std::size_t k = 0; k < state.dimension(); ++k) {
        std::size_t mapped = 0;
        for (int q = 0; q < n; ++q) {
            if (((k >> q) & 1U) != 0) {
                mapped |= std::size_t{1} << permutation[static_cast<std::size_t>(q)];
            }
        }
        out[mapped] = state[k];
    }
    return StateVector::from_amplitudes(std::move(out));
}

} // namespace qkonc
