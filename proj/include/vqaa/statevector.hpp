#pragma once

// Dense statevector simulation for small registers (up to 16 qubits).
//
// Qubit 0 is the left-most bit of a basis label: for n qubits, qubit q is
// bit (n - 1 - q) of the amplitude index. A 10-qubit key register therefore
// indexes amplitudes by the key's integer value read MSB-first.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqaa {

using complex_t = std::complex<double>;

enum class PauliAxis { x, y, z };

class Statevector {
  public:
    static constexpr int max_qubits = 16;

    /// |0...0>
    explicit Statevector(int qubits) : qubits_(check_qubits(qubits)) {
        amps_.assign(std::size_t{1} << qubits_, complex_t{0.0, 0.0});
        amps_[0] = 1.0;
    }

    Statevector(int qubits, std::vector<complex_t> amplitudes)
        : qubits_(check_qubits(qubits)), amps_(std::move(amplitudes)) {
        if (amps_.size() != (std::size_t{1} << qubits_)) {
            throw std::invalid_argument("amplitude count does not match qubit count");
        }
    }

    static Statevector basis(int qubits, std::uint32_t index) {
        Statevector s(qubits);
        if (index >= s.dimension()) {
            throw std::out_of_range("basis index out of range");
        }
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    [[nodiscard]] int qubits() const { return qubits_; }
    [[nodiscard]] std::size_t dimension() const { return amps_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<complex_t> amplitudes() { return amps_; }
    [[nodiscard]] const complex_t& operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    /// Bit mask of a qubit within an amplitude index.
    [[nodiscard]] std::size_t mask(int qubit) const {
        check_index(qubit);
        return std::size_t{1} << (qubits_ - 1 - qubit);
    }

    void check_index(int qubit) const {
        if (qubit < 0 || qubit >= qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range [0, " +
                                    std::to_string(qubits_) + ")");
        }
    }

  private:
    static int check_qubits(int n) {
        if (n < 1 || n > max_qubits) {
            throw std::invalid_argument("qubit count must be in [1, 16], got " +
                                        std::to_string(n));
        }
        return n;
    }

    int qubits_;
    std::vector<complex_t> amps_;
};

inline Statevector init_uniform(int qubits) {
    Statevector s(qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dimension()));
    std::fill(s.amplitudes().begin(), s.amplitudes().end(), complex_t{a, 0.0});
    return s;
}

/// R_y(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]
inline void apply_ry(Statevector& state, int qubit, double theta) {
    const std::size_t m = state.mask(qubit);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & m) != 0) continue;
        const complex_t a0 = amps[i];
        const complex_t a1 = amps[i | m];
        amps[i] = c * a0 - s * a1;
        amps[i | m] = s * a0 + c * a1;
    }
}

inline void apply_pauli(Statevector& state, int qubit, PauliAxis axis) {
    const std::size_t m = state.mask(qubit);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & m) != 0) continue;
        const complex_t a0 = amps[i];
        const complex_t a1 = amps[i | m];
        switch (axis) {
        case PauliAxis::x:
            amps[i] = a1;
            amps[i | m] = a0;
            break;
        case PauliAxis::y:
            amps[i] = complex_t{0.0, -1.0} * a1;
            amps[i | m] = complex_t{0.0, 1.0} * a0;
            break;
        case PauliAxis::z:
            amps[i | m] = -a1;
            break;
        }
    }
}

/// Pauli gate on `target` within the control = 1 subspace.
inline void apply_controlled(Statevector& state, int control, int target, PauliAxis axis) {
    if (control == target) {
        throw std::invalid_argument("control and target must differ");
    }
    const std::size_t cm = state.mask(control);
    const std::size_t tm = state.mask(target);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cm) == 0 || (i & tm) != 0) continue;
        const complex_t a0 = amps[i];
        const complex_t a1 = amps[i | tm];
        switch (axis) {
        case PauliAxis::x:
            amps[i] = a1;
            amps[i | tm] = a0;
            break;
        case PauliAxis::y:
            amps[i] = complex_t{0.0, -1.0} * a1;
            amps[i | tm] = complex_t{0.0, 1.0} * a0;
            break;
        case PauliAxis::z:
            amps[i | tm] = -a1;
            break;
        }
    }
}

inline std::vector<double> probabilities(const Statevector& state) {
    std::vector<double> p(state.dimension());
    std::transform(state.amplitudes().begin(), state.amplitudes().end(), p.begin(),
                   [](const complex_t& a) { return std::norm(a); });
    return p;
}

/// I.i.d. basis-state draws from the Born distribution using `rng`.
template <class Rng>
std::vector<std::uint32_t> sample_keys(const Statevector& state, int count, Rng& rng) {
    if (count < 1) {
        throw std::invalid_argument("sample count must be at least 1");
    }
    const std::vector<double> p = probabilities(state);
    std::vector<double> cdf(p.size());
    std::partial_sum(p.begin(), p.end(), cdf.begin());
    const double total = cdf.back();
    std::uniform_real_distribution<double> u(0.0, total);
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double r = u(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        // Skip zero-probability entries that share a cdf value with their predecessor.
        std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                                                p.size() - 1);
        while (p[idx] == 0.0 && idx > 0) --idx;
        out.push_back(static_cast<std::uint32_t>(idx));
    }
    return out;
}

inline std::vector<std::uint32_t> sample_keys(const Statevector& state, int count,
                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_keys(state, count, rng);
}

} // namespace vqaa
