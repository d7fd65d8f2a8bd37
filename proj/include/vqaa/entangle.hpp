#pragma once

// Entanglement of a pure register state across a bipartition A|B.
//
//   S(rho_A) = -Tr[rho_A log2 rho_A]        (bits)
//   C(rho_A) = sqrt(2 (1 - Tr rho_A^2))

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "vqaa/statevector.hpp"

namespace vqaa {

class Bipartition {
  public:
    /// `part_a` in the order its qubits index rho_A; B is the ascending complement.
    Bipartition(int qubits, std::vector<int> part_a) : qubits_(qubits), part_a_(std::move(part_a)) {
        if (qubits_ < 2 || qubits_ > Statevector::max_qubits) {
            throw std::invalid_argument("bipartition needs 2..16 qubits");
        }
        std::vector<bool> used(static_cast<std::size_t>(qubits_), false);
        for (int q : part_a_) {
            if (q < 0 || q >= qubits_ || used[static_cast<std::size_t>(q)]) {
                throw std::invalid_argument("invalid bipartition: bad or repeated qubit");
            }
            used[static_cast<std::size_t>(q)] = true;
        }
        for (int q = 0; q < qubits_; ++q) {
            if (!used[static_cast<std::size_t>(q)]) part_b_.push_back(q);
        }
        if (part_a_.empty() || part_b_.empty()) {
            throw std::invalid_argument("invalid bipartition: both parts must be non-empty");
        }
    }

    /// First half of the qubits against the second half.
    static Bipartition halves(int qubits) {
        std::vector<int> a(static_cast<std::size_t>(qubits / 2));
        std::iota(a.begin(), a.end(), 0);
        return Bipartition(qubits, std::move(a));
    }

    [[nodiscard]] int qubits() const { return qubits_; }
    [[nodiscard]] const std::vector<int>& part_a() const { return part_a_; }
    [[nodiscard]] const std::vector<int>& part_b() const { return part_b_; }

    [[nodiscard]] Bipartition swapped() const { return Bipartition(qubits_, part_b_); }

  private:
    int qubits_;
    std::vector<int> part_a_;
    std::vector<int> part_b_;
};

namespace detail {
// Amplitude matrix M with M(a, b) = <a, b|psi>, so rho_A = M M^dagger.
inline Eigen::MatrixXcd amplitude_matrix(const Statevector& state, const Bipartition& cut) {
    if (cut.qubits() != state.qubits()) {
        throw std::invalid_argument("bipartition does not match register size");
    }
    const auto& pa = cut.part_a();
    const auto& pb = cut.part_b();
    const Eigen::Index da = Eigen::Index{1} << pa.size();
    const Eigen::Index db = Eigen::Index{1} << pb.size();
    std::vector<std::size_t> offset_a(static_cast<std::size_t>(da), 0);
    std::vector<std::size_t> offset_b(static_cast<std::size_t>(db), 0);
    for (Eigen::Index a = 0; a < da; ++a) {
        for (std::size_t k = 0; k < pa.size(); ++k) {
            if ((a >> (pa.size() - 1 - k)) & 1) offset_a[static_cast<std::size_t>(a)] |= state.mask(pa[k]);
        }
    }
    for (Eigen::Index b = 0; b < db; ++b) {
        for (std::size_t k = 0; k < pb.size(); ++k) {
            if ((b >> (pb.size() - 1 - k)) & 1) offset_b[static_cast<std::size_t>(b)] |= state.mask(pb[k]);
        }
    }
    Eigen::MatrixXcd m(da, db);
    for (Eigen::Index a = 0; a < da; ++a) {
        for (Eigen::Index b = 0; b < db; ++b) {
            m(a, b) = state[offset_a[static_cast<std::size_t>(a)] | offset_b[static_cast<std::size_t>(b)]];
        }
    }
    return m;
}
} // namespace detail

inline Eigen::MatrixXcd reduced_density(const Statevector& state, const Bipartition& cut) {
    const Eigen::MatrixXcd m = detail::amplitude_matrix(state, cut);
    return m * m.adjoint();
}

inline double entanglement_entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda > 1e-12) s -= lambda * std::log2(lambda);
    }
    return std::max(0.0, s);
}

inline double entanglement_entropy(const Statevector& state, const Bipartition& cut) {
    return entanglement_entropy(reduced_density(state, cut));
}

/// Linear entropies below this are rounding noise from the partial trace;
/// the square root would otherwise turn 1e-16 into 1e-8.
inline constexpr double linear_entropy_floor = 1e-13;

inline double concurrence(const Eigen::MatrixXcd& rho) {
    const double linear = 1.0 - (rho * rho).trace().real();
    if (linear < linear_entropy_floor) return 0.0;
    const double dim = static_cast<double>(rho.rows());
    const double upper = std::sqrt(2.0 * (1.0 - 1.0 / dim));
    return std::min(std::sqrt(2.0 * linear), upper);
}

inline double concurrence(const Statevector& state, const Bipartition& cut) {
    return concurrence(reduced_density(state, cut));
}

struct EntanglementMetrics {
    double entropy = 0.0;
    double concurrence = 0.0;
};

/// Both metrics from a single partial trace.
inline EntanglementMetrics entanglement_metrics(const Statevector& state, const Bipartition& cut) {
    const Eigen::MatrixXcd rho = reduced_density(state, cut);
    return {entanglement_entropy(rho), concurrence(rho)};
}

} // namespace vqaa
