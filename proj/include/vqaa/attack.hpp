#pragma once

// Variational key search against S-DES.
//
// The ansatz prepares a superposition over the 1024 keys. Encrypting the
// known plaintext under each key and measuring the diagonal Hamiltonian
// gives the cost
//
//   E(beta) = sum_k |<k|beta>|^2 * H(encrypt(plaintext, k))
//
// so the cipher is applied classically per basis key and the per-key
// energies are tabulated once per problem.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqaa/ansatz.hpp"
#include "vqaa/entangle.hpp"
#include "vqaa/hamiltonian.hpp"
#include "vqaa/optim.hpp"
#include "vqaa/sdes.hpp"
#include "vqaa/seeds.hpp"
#include "vqaa/statevector.hpp"

namespace vqaa {

inline constexpr int default_measurement_budget = 1 << 10;

/// Tuned learning rates: A = 0.72/0.72/1.08, B = 0.72/0.76/0.94 (x/y/z).
inline double default_learning_rate(AnsatzFamily family, AnsatzVariant variant) {
    static constexpr std::array<double, 3> a{0.72, 0.72, 1.08};
    static constexpr std::array<double, 3> b{0.72, 0.76, 0.94};
    const auto i = static_cast<std::size_t>(family);
    return variant == AnsatzVariant::a ? a[i] : b[i];
}

/// Tuned simplex amplification: A = 2.7/2.7/2.8, B = 2.7 throughout.
inline double default_amplification(AnsatzFamily family, AnsatzVariant variant) {
    static constexpr std::array<double, 3> a{2.7, 2.7, 2.8};
    static constexpr std::array<double, 3> b{2.7, 2.7, 2.7};
    const auto i = static_cast<std::size_t>(family);
    return variant == AnsatzVariant::a ? a[i] : b[i];
}

struct AttackProblem {
    BitBlock plaintext{8, 0};
    BitBlock ciphertext{8, 0};
    GraphHamiltonian hamiltonian;
    AnsatzSpec spec;
    double cutoff = -9.0;
    int measurement_budget = default_measurement_budget;
};

/// Problem for a known (plaintext, key) pair; cutoff is the first excited energy.
inline AttackProblem make_problem(const BitBlock& plaintext, const BitBlock& key, int degree,
                                  const AnsatzSpec& spec) {
    spec.validate();
    if (spec.qubits != sdes::key_bits) {
        throw std::invalid_argument("attack ansatz must act on the 10-qubit key register");
    }
    const BitBlock ciphertext = sdes::encrypt(plaintext, key);
    GraphHamiltonian h(build_graph(degree), ciphertext);
    const double cutoff = h.summary().first_excited;
    return AttackProblem{plaintext, ciphertext, std::move(h), spec, cutoff,
                         default_measurement_budget};
}

/// Entry k is the energy of encrypt(plaintext, k).
inline std::vector<double> cipher_energy_table(const AttackProblem& problem) {
    std::vector<double> table(sdes::key_count);
    for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(sdes::key_count); ++k) {
        table[k] = problem.hamiltonian.energy(
            sdes::encrypt(problem.plaintext, BitBlock(sdes::key_bits, k)));
    }
    return table;
}

inline bool verify_key(const BitBlock& candidate, const AttackProblem& problem) {
    return sdes::encrypt(problem.plaintext, candidate) == problem.ciphertext;
}

/// Exact expectation of the Hamiltonian for a key distribution.
inline double expectation(std::span<const double> key_probabilities,
                          std::span<const double> energy_table) {
    double e = 0.0;
    for (std::size_t k = 0; k < key_probabilities.size(); ++k) {
        e += key_probabilities[k] * energy_table[k];
    }
    return e;
}

struct CostEvaluation {
    double value = 0.0;
    long evaluation_index = 0;
};

/// The cost function plus the per-problem caches it needs. Calls are
/// counted; one instance belongs to one run.
class AttackObjective {
  public:
    explicit AttackObjective(const AttackProblem& problem)
        : problem_(&problem), table_(cipher_energy_table(problem)) {
        for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(sdes::key_count); ++k) {
            if (verify_key(BitBlock(sdes::key_bits, k), problem)) ground_keys_.push_back(k);
        }
    }

    [[nodiscard]] const AttackProblem& problem() const { return *problem_; }
    [[nodiscard]] std::span<const double> energy_table() const { return table_; }
    /// Keys that map the plaintext onto the ciphertext.
    [[nodiscard]] std::span<const std::uint32_t> ground_keys() const { return ground_keys_; }
    [[nodiscard]] long evaluations() const { return evaluations_; }

    [[nodiscard]] Statevector state(std::span<const double> params) const {
        return build_ansatz_state(problem_->spec, params);
    }

    CostEvaluation cost(std::span<const double> params) {
        const double v = expectation(probabilities(state(params)), table_);
        return {v, ++evaluations_};
    }

    double operator()(std::span<const double> params) { return cost(params).value; }

    [[nodiscard]] double ground_probability(const Statevector& s) const {
        double p = 0.0;
        for (std::uint32_t k : ground_keys_) p += std::norm(s[k]);
        return p;
    }

    [[nodiscard]] double ground_probability(std::span<const double> params) const {
        return ground_probability(state(params));
    }

  private:
    const AttackProblem* problem_;
    std::vector<double> table_;
    std::vector<std::uint32_t> ground_keys_;
    long evaluations_ = 0;
};

inline double cost(std::span<const double> params, const AttackProblem& problem) {
    AttackObjective f(problem);
    return f(params);
}

inline double ground_probability(std::span<const double> params, const AttackProblem& problem) {
    return AttackObjective(problem).ground_probability(params);
}

struct EigenstateProbability {
    std::uint32_t ciphertext = 0;
    double energy = 0.0;
    double probability = 0.0;
};

/// Probability of each ciphertext eigenstate, ordered from the ground state
/// upward (ties by ciphertext value).
inline std::vector<EigenstateProbability> eigenstate_probabilities(const Statevector& key_state,
                                                                   const AttackProblem& problem) {
    std::vector<EigenstateProbability> out(basis_states);
    for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(basis_states); ++c) {
        out[c] = {c, problem.hamiltonian.energy(c), 0.0};
    }
    const std::vector<double> p = probabilities(key_state);
    for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(sdes::key_count); ++k) {
        out[sdes::encrypt(problem.plaintext.value(), k)].probability += p[k];
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.energy < b.energy;
    });
    return out;
}

enum class OptimizerKind { gd, nm };

inline std::string_view to_string(OptimizerKind k) { return k == OptimizerKind::gd ? "gd" : "nm"; }

inline OptimizerKind parse_optimizer(std::string_view s) {
    if (s == "gd" || s == "GD") return OptimizerKind::gd;
    if (s == "nm" || s == "NM") return OptimizerKind::nm;
    throw std::invalid_argument("unknown optimizer '" + std::string(s) + "'");
}

struct OptimizerChoice {
    OptimizerKind kind = OptimizerKind::gd;
    GDConfig gd;
    NMConfig nm;

    /// Tuned defaults for an ansatz, with cutoff and budget from the problem.
    static OptimizerChoice defaults(OptimizerKind kind, const AttackProblem& problem) {
        OptimizerChoice c;
        c.kind = kind;
        c.gd.learning_rate = default_learning_rate(problem.spec.family, problem.spec.variant);
        c.gd.cutoff = problem.cutoff;
        c.gd.budget = problem.measurement_budget;
        c.nm.amplification = default_amplification(problem.spec.family, problem.spec.variant);
        c.nm.cutoff = problem.cutoff;
        c.nm.budget = problem.measurement_budget;
        return c;
    }
};

struct TraceRecord {
    int iteration = 0;
    int evaluations = 0;
    double cost = 0.0;
    double entropy = 0.0;
    double concurrence = 0.0;
    bool restarted = false;
    double ground_prob = 0.0;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct AttackTrace {
    std::vector<TraceRecord> records;
    bool success = false;
    bool reached_cutoff = false;
    /// Optimizer iterations (GD outer loops, NM simplex passes).
    int iterations = 0;
    /// Objective evaluations spent by the optimizer.
    int evaluations = 0;
    /// Key measurements drawn after the cutoff was reached.
    int sample_draws = 0;
    int restarts = 0;
    std::optional<std::uint32_t> found_key;
    ParamVector final_params;
    double final_cost = 0.0;
    double best_cost = 0.0;
    double final_ground_prob = 0.0;
    EntanglementMetrics final_metrics;
};

/// Drives the optimizer from `x0` until the cutoff or the budget. Once the
/// cutoff is met, keys are drawn from the final state and checked against the
/// known pair; draws share the remaining measurement budget.
inline AttackTrace run_attack(const AttackProblem& problem, const OptimizerChoice& optimizer,
                              ParamVector x0, std::uint64_t seed) {
    AttackObjective objective(problem);
    const Bipartition cut = Bipartition::halves(problem.spec.qubits);
    AttackTrace trace;

    IterationObserver observe = [&](const IterationEvent& ev) {
        const Statevector s = objective.state(ev.params);
        const EntanglementMetrics m = entanglement_metrics(s, cut);
        trace.records.push_back({ev.iteration, ev.evaluations, ev.value, m.entropy, m.concurrence,
                                 ev.restarted, objective.ground_probability(s)});
    };

    const std::uint64_t optimizer_seed = derive_seed(seed, 1);
    const std::uint64_t sampling_seed = derive_seed(seed, 2);
    const OptimizerOutcome outcome =
        optimizer.kind == OptimizerKind::gd
            ? gd_minimize(objective, std::move(x0), optimizer.gd, optimizer_seed, observe)
            : nm_minimize(objective, std::move(x0), optimizer.nm, optimizer_seed, observe);

    trace.reached_cutoff = outcome.reached_cutoff;
    trace.iterations = outcome.iterations;
    trace.evaluations = outcome.evaluations;
    trace.restarts = outcome.restarts;
    trace.final_params = outcome.final_params;
    trace.final_cost = outcome.final_value;
    trace.best_cost = outcome.best_value;

    const Statevector final_state = objective.state(outcome.final_params);
    trace.final_ground_prob = objective.ground_probability(final_state);
    trace.final_metrics = entanglement_metrics(final_state, cut);

    const int residual = problem.measurement_budget - outcome.evaluations;
    if (outcome.reached_cutoff && residual > 0) {
        std::mt19937_64 rng(sampling_seed);
        const std::vector<std::uint32_t> draws = sample_keys(final_state, residual, rng);
        for (std::size_t i = 0; i < draws.size(); ++i) {
            trace.sample_draws = static_cast<int>(i) + 1;
            if (verify_key(BitBlock(sdes::key_bits, draws[i]), problem)) {
                trace.found_key = draws[i];
                trace.success = true;
                break;
            }
        }
    }
    return trace;
}

/// Starting angles drawn uniformly from [0, 2*pi) with a seed-derived stream.
inline ParamVector initial_params(const AnsatzSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0));
    return random_angles(static_cast<std::size_t>(spec.parameter_count()), rng);
}

inline AttackTrace run_attack(const AttackProblem& problem, const OptimizerChoice& optimizer,
                              std::uint64_t seed) {
    return run_attack(problem, optimizer, initial_params(problem.spec, seed), seed);
}

} // namespace vqaa
