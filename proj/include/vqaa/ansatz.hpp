#pragma once

// Hardware-efficient "Y-C{x,y,z}" ansatz families.
//
// A Hadamard layer prepares the uniform superposition once. Each repeated
// layer applies R_y(beta) to every qubit, then a controlled-Pauli chain
// i -> i+1 for i = 0..n-2. Variant A closes the ring with n-1 -> 0.
//
// With the Hadamard layer counted, one layer has depth n+2 (A) or n+1 (B).

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vqaa/statevector.hpp"

namespace vqaa {

enum class AnsatzFamily { y_cx, y_cy, y_cz };
enum class AnsatzVariant { a, b };

inline PauliAxis entangler_axis(AnsatzFamily f) {
    switch (f) {
    case AnsatzFamily::y_cx: return PauliAxis::x;
    case AnsatzFamily::y_cy: return PauliAxis::y;
    case AnsatzFamily::y_cz: return PauliAxis::z;
    }
    throw std::logic_error("unknown ansatz family");
}

inline std::string_view to_string(AnsatzFamily f) {
    switch (f) {
    case AnsatzFamily::y_cx: return "ycx";
    case AnsatzFamily::y_cy: return "ycy";
    case AnsatzFamily::y_cz: return "ycz";
    }
    return "?";
}

inline std::string_view to_string(AnsatzVariant v) { return v == AnsatzVariant::a ? "A" : "B"; }

inline AnsatzFamily parse_family(std::string_view s) {
    if (s == "ycx" || s == "Y-Cx") return AnsatzFamily::y_cx;
    if (s == "ycy" || s == "Y-Cy") return AnsatzFamily::y_cy;
    if (s == "ycz" || s == "Y-Cz") return AnsatzFamily::y_cz;
    throw std::invalid_argument("unknown ansatz family '" + std::string(s) + "'");
}

inline AnsatzVariant parse_variant(std::string_view s) {
    if (s == "A" || s == "a") return AnsatzVariant::a;
    if (s == "B" || s == "b") return AnsatzVariant::b;
    throw std::invalid_argument("unknown ansatz variant '" + std::string(s) + "'");
}

struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::y_cz;
    AnsatzVariant variant = AnsatzVariant::a;
    int layers = 1;
    int qubits = 10;

    [[nodiscard]] int parameter_count() const { return layers * qubits; }

    [[nodiscard]] int controlled_gates_per_layer() const {
        return variant == AnsatzVariant::a ? qubits : qubits - 1;
    }

    /// Hadamard layer + per layer: one rotation slice and a serial chain.
    [[nodiscard]] int depth() const {
        return 1 + layers * (1 + controlled_gates_per_layer());
    }

    [[nodiscard]] std::string name() const {
        return std::string(to_string(family)) + "-" + std::string(to_string(variant));
    }

    void validate() const {
        if (layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
        if (qubits < 2 || qubits > Statevector::max_qubits) {
            throw std::invalid_argument("ansatz qubit count must be in [2, 16]");
        }
    }
};

/// One gate of the circuit, in application order; `theta_index` is -1 for
/// non-parametric gates.
struct GateOp {
    enum class Kind { hadamard, ry, controlled } kind;
    int qubit = 0;
    int target = -1;
    int theta_index = -1;
};

inline std::vector<GateOp> ansatz_gates(const AnsatzSpec& spec) {
    spec.validate();
    std::vector<GateOp> ops;
    for (int q = 0; q < spec.qubits; ++q) ops.push_back({GateOp::Kind::hadamard, q, -1, -1});
    for (int l = 0; l < spec.layers; ++l) {
        for (int q = 0; q < spec.qubits; ++q) {
            ops.push_back({GateOp::Kind::ry, q, -1, l * spec.qubits + q});
        }
        for (int q = 0; q + 1 < spec.qubits; ++q) {
            ops.push_back({GateOp::Kind::controlled, q, q + 1, -1});
        }
        if (spec.variant == AnsatzVariant::a) {
            ops.push_back({GateOp::Kind::controlled, spec.qubits - 1, 0, -1});
        }
    }
    return ops;
}

inline Statevector build_ansatz_state(const AnsatzSpec& spec, std::span<const double> params) {
    spec.validate();
    if (params.size() != static_cast<std::size_t>(spec.parameter_count())) {
        throw std::invalid_argument("ansatz " + spec.name() + " expects " +
                                    std::to_string(spec.parameter_count()) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    const PauliAxis axis = entangler_axis(spec.family);
    Statevector state = init_uniform(spec.qubits);
    for (int l = 0; l < spec.layers; ++l) {
        for (int q = 0; q < spec.qubits; ++q) {
            apply_ry(state, q, params[static_cast<std::size_t>(l * spec.qubits + q)]);
        }
        for (int q = 0; q + 1 < spec.qubits; ++q) apply_controlled(state, q, q + 1, axis);
        if (spec.variant == AnsatzVariant::a) apply_controlled(state, spec.qubits - 1, 0, axis);
    }
    return state;
}

} // namespace vqaa
