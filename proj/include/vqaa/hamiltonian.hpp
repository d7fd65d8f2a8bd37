#pragma once

// Diagonal Ising Hamiltonian on 8 qubits whose unique ground state is a
// chosen ciphertext.
//
//   H = sum_{(i,j) in E} w_ij Z_i Z_j + sum_i t_i Z_i
//   w_ij = +1 if the ciphertext bits i and j differ, -1 otherwise
//   t_i  = +0.5 if ciphertext bit i is 1, -0.5 otherwise
//
// Node i is the i-th ciphertext bit counting from the left. On a basis
// state, Z_i evaluates to +1 for bit 0 and -1 for bit 1.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vqaa/bit_block.hpp"

namespace vqaa {

inline constexpr int graph_nodes = 8;
inline constexpr int basis_states = 1 << graph_nodes;

using Edge = std::pair<int, int>;

class RegularGraph {
  public:
    /// Validates regularity; edges are normalized to (low, high) and sorted.
    RegularGraph(int degree, std::vector<Edge> edges) : degree_(degree), edges_(std::move(edges)) {
        if (degree_ < 1 || degree_ > graph_nodes - 1) {
            throw std::invalid_argument("graph degree must be in [1, 7], got " +
                                        std::to_string(degree_));
        }
        std::array<int, graph_nodes> incident{};
        for (auto& [a, b] : edges_) {
            if (a < 0 || a >= graph_nodes || b < 0 || b >= graph_nodes || a == b) {
                throw std::invalid_argument("bad edge (" + std::to_string(a) + "," +
                                            std::to_string(b) + ")");
            }
            if (a > b) std::swap(a, b);
            ++incident[static_cast<std::size_t>(a)];
            ++incident[static_cast<std::size_t>(b)];
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
            throw std::invalid_argument("duplicate edge in graph");
        }
        for (int c : incident) {
            if (c != degree_) {
                throw std::invalid_argument("graph is not " + std::to_string(degree_) +
                                            "-regular");
            }
        }
    }

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

    [[nodiscard]] bool adjacent(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
    }

  private:
    int degree_;
    std::vector<Edge> edges_;
};

/// A fixed 3-regular graph; every other degree uses a circulant
/// graph (i ~ i+-1..i+-k for degree 2k, plus the antipodal i ~ i+4 when the
/// degree is odd).
inline RegularGraph build_graph(int degree) {
    if (degree < 1 || degree > graph_nodes - 1) {
        throw std::invalid_argument("graph degree must be in [1, 7], got " +
                                    std::to_string(degree));
    }
    if (degree == 3) {
        return RegularGraph(3, {{0, 1}, {0, 6}, {0, 7}, {1, 3}, {1, 7}, {2, 4},
                                {2, 5}, {2, 7}, {3, 4}, {3, 6}, {4, 5}, {5, 6}});
    }
    std::vector<Edge> edges;
    const int reach = degree / 2;
    for (int i = 0; i < graph_nodes; ++i) {
        for (int d = 1; d <= reach; ++d) {
            const int j = (i + d) % graph_nodes;
            edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    if (degree % 2 == 1) {
        for (int i = 0; i < graph_nodes / 2; ++i) edges.emplace_back(i, i + graph_nodes / 2);
    }
    return RegularGraph(degree, std::move(edges));
}

struct SpectrumSummary {
    double ground = 0.0;
    double first_excited = 0.0;
    double highest = 0.0;
    double ratio = 0.0;
};

class GraphHamiltonian {
  public:
    GraphHamiltonian(RegularGraph graph, const BitBlock& ciphertext)
        : graph_(std::move(graph)), ciphertext_(ciphertext) {
        if (ciphertext.width() != graph_nodes) {
            throw configuration_error("ciphertext must be 8 bits wide");
        }
        for (const auto& [i, j] : graph_.edges()) {
            edge_weights_.push_back(bit(i) != bit(j) ? 1.0 : -1.0);
        }
        for (int i = 0; i < graph_nodes; ++i) {
            node_weights_[static_cast<std::size_t>(i)] = bit(i) == 1 ? 0.5 : -0.5;
        }
        for (int s = 0; s < basis_states; ++s) {
            diagonal_[static_cast<std::size_t>(s)] = evaluate_terms(static_cast<std::uint32_t>(s));
        }
    }

    [[nodiscard]] const RegularGraph& graph() const { return graph_; }
    [[nodiscard]] const BitBlock& ciphertext() const { return ciphertext_; }
    /// Parallel to graph().edges().
    [[nodiscard]] std::span<const double> edge_weights() const { return edge_weights_; }
    [[nodiscard]] std::span<const double> node_weights() const { return node_weights_; }
    [[nodiscard]] std::span<const double, basis_states> diagonal() const { return diagonal_; }

    /// Number of Pauli terms: one per edge plus one per node.
    [[nodiscard]] std::size_t term_count() const {
        return edge_weights_.size() + node_weights_.size();
    }

    [[nodiscard]] double energy(std::uint32_t state) const {
        if (state >= static_cast<std::uint32_t>(basis_states)) {
            throw std::out_of_range("basis state " + std::to_string(state) + " out of range");
        }
        return diagonal_[state];
    }

    [[nodiscard]] double energy(const BitBlock& state) const {
        if (state.width() != graph_nodes) {
            throw configuration_error("state must be 8 bits wide");
        }
        return diagonal_[state.value()];
    }

    /// Direct term-by-term evaluation, bypassing the cached diagonal.
    [[nodiscard]] double evaluate_terms(std::uint32_t state) const {
        auto z = [state](int node) {
            return ((state >> (graph_nodes - 1 - node)) & 1U) != 0 ? -1.0 : 1.0;
        };
        double e = 0.0;
        const auto edges = graph_.edges();
        for (std::size_t k = 0; k < edges.size(); ++k) {
            e += edge_weights_[k] * z(edges[k].first) * z(edges[k].second);
        }
        for (int i = 0; i < graph_nodes; ++i) {
            e += node_weights_[static_cast<std::size_t>(i)] * z(i);
        }
        return e;
    }

    /// All 256 energies in ascending order.
    [[nodiscard]] std::vector<double> sorted_spectrum() const {
        std::vector<double> s(diagonal_.begin(), diagonal_.end());
        std::sort(s.begin(), s.end());
        return s;
    }

    [[nodiscard]] SpectrumSummary summary() const {
        const std::vector<double> s = sorted_spectrum();
        SpectrumSummary out;
        out.ground = s.front();
        out.highest = s.back();
        // The ground state is unique, so the second entry is the first excited level.
        out.first_excited = s[1];
        out.ratio = (out.first_excited - out.ground) / (out.highest - out.ground);
        return out;
    }

  private:
    [[nodiscard]] int bit(int node) const { return ciphertext_.at(node + 1); }

    RegularGraph graph_;
    BitBlock ciphertext_;
    std::vector<double> edge_weights_;
    std::array<double, graph_nodes> node_weights_{};
    std::array<double, basis_states> diagonal_{};
};

inline GraphHamiltonian build_hamiltonian(const RegularGraph& graph, const BitBlock& ciphertext) {
    return GraphHamiltonian(graph, ciphertext);
}

} // namespace vqaa
