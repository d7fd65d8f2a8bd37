#pragma once

// Batch experiments: the ansatz x optimizer iteration table, the graph
// degree sweep, and trace classification.
//
// Every run is seeded from (master seed, simulation index) only, so results
// do not depend on worker count or completion order.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "vqaa/attack.hpp"
#include "vqaa/seeds.hpp"

namespace vqaa {

inline constexpr char workers_env_var[] = "VQAA_WORKERS";

/// Worker count from VQAA_WORKERS, else hardware concurrency.
inline int default_workers() {
    if (const char* v = std::getenv(workers_env_var)) {
        const int n = std::atoi(v);
        if (n >= 1) return n;
    }
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

/// Calls fn(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct Instance {
    BitBlock plaintext{8, 0};
    BitBlock key{10, 0};
    BitBlock ciphertext{8, 0};
};

inline Instance random_instance(std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 10));
    std::uniform_int_distribution<std::uint32_t> key_dist(0, sdes::key_count - 1);
    std::uniform_int_distribution<std::uint32_t> text_dist(0, sdes::block_count - 1);
    const BitBlock key(sdes::key_bits, key_dist(rng));
    const BitBlock plaintext(sdes::block_bits, text_dist(rng));
    return {plaintext, key, sdes::encrypt(plaintext, key)};
}

inline std::uint64_t simulation_seed(std::uint64_t master, int simulation) {
    return derive_seed(master, static_cast<std::uint64_t>(simulation));
}

/// Largest iteration count a run can report under `budget` evaluations.
inline int iteration_cap(OptimizerKind kind, int dimension, int budget) {
    if (kind == OptimizerKind::gd) return (budget - 1) / (dimension + 1) + 1;
    // NM: the initial simplex, then at least one evaluation per non-final pass.
    return budget - (dimension + 1) + 1;
}

/// Optional hyperparameter overrides; unset fields keep the tuned defaults.
struct Overrides {
    std::optional<double> learning_rate;
    std::optional<double> alpha;
    std::optional<double> restart_norm;
    std::optional<double> restart_spread;
    std::optional<int> budget;
    std::optional<double> cutoff;

    void apply(AttackProblem& problem, OptimizerChoice& choice) const {
        if (budget) {
            problem.measurement_budget = *budget;
            choice.gd.budget = *budget;
            choice.nm.budget = *budget;
        }
        if (cutoff) {
            problem.cutoff = *cutoff;
            choice.gd.cutoff = *cutoff;
            choice.nm.cutoff = *cutoff;
        }
        if (learning_rate) choice.gd.learning_rate = *learning_rate;
        if (restart_norm) choice.gd.restart_norm = *restart_norm;
        if (alpha) choice.nm.amplification = *alpha;
        if (restart_spread) choice.nm.restart_spread = *restart_spread;
    }
};

struct RunConfig {
    AnsatzSpec spec;
    OptimizerKind optimizer = OptimizerKind::gd;
    int degree = 3;

    [[nodiscard]] std::string label() const {
        return spec.name() + "-" + std::string(to_string(optimizer)) + "-d" +
               std::to_string(degree);
    }
};

struct RunResult {
    RunConfig config;
    int simulation = 0;
    Instance instance;
    AttackProblem problem;
    AttackTrace trace;

    [[nodiscard]] std::string run_id() const {
        std::string sim = std::to_string(simulation);
        sim.insert(0, sim.size() < 3 ? 3 - sim.size() : 0, '0');
        return config.label() + "-s" + sim;
    }
};

/// One seeded attack. The instance and starting angles depend only on
/// (master seed, simulation), so every configuration sees the same triple.
inline RunResult run_single(const RunConfig& config, std::uint64_t master_seed, int simulation,
                            const Overrides& overrides = {}) {
    const std::uint64_t seed = simulation_seed(master_seed, simulation);
    const Instance inst = random_instance(seed);
    AttackProblem problem = make_problem(inst.plaintext, inst.key, config.degree, config.spec);
    OptimizerChoice choice = OptimizerChoice::defaults(config.optimizer, problem);
    overrides.apply(problem, choice);
    AttackTrace trace = run_attack(problem, choice, initial_params(config.spec, seed), seed);
    return {config, simulation, inst, std::move(problem), std::move(trace)};
}

struct BatchSummary {
    RunConfig config;
    int simulations = 0;
    int maximum = 0;
    int minimum = 0;
    double average = 0.0;
    double success_rate = 0.0;
    double average_evaluations = 0.0;
    /// Mean iterations over simulations 1..k, for k = 1..simulations.
    std::vector<double> running_average;
};

/// Deterministic fold over runs ordered by simulation index.
inline BatchSummary summarize(const RunConfig& config, const std::vector<const RunResult*>& runs) {
    BatchSummary s;
    s.config = config;
    s.simulations = static_cast<int>(runs.size());
    if (runs.empty()) return s;
    s.maximum = runs.front()->trace.iterations;
    s.minimum = runs.front()->trace.iterations;
    long total = 0;
    long evals = 0;
    int successes = 0;
    for (const RunResult* r : runs) {
        const int it = r->trace.iterations;
        s.maximum = std::max(s.maximum, it);
        s.minimum = std::min(s.minimum, it);
        total += it;
        evals += r->trace.evaluations;
        successes += r->trace.success ? 1 : 0;
        s.running_average.push_back(static_cast<double>(total) /
                                    static_cast<double>(s.running_average.size() + 1));
    }
    const double n = static_cast<double>(runs.size());
    s.average = static_cast<double>(total) / n;
    s.average_evaluations = static_cast<double>(evals) / n;
    s.success_rate = successes / n;
    return s;
}

struct ExperimentConfig {
    int simulations = 30;
    std::vector<AnsatzFamily> families{AnsatzFamily::y_cx, AnsatzFamily::y_cy, AnsatzFamily::y_cz};
    std::vector<AnsatzVariant> variants{AnsatzVariant::a, AnsatzVariant::b};
    std::vector<OptimizerKind> optimizers{OptimizerKind::nm, OptimizerKind::gd};
    int degree = 3;
    int layers = 1;
    std::uint64_t master_seed = 2022;
    int workers = 1;
    Overrides overrides;

    void validate() const {
        if (simulations < 1) throw std::invalid_argument("simulations must be at least 1");
        if (layers < 1) throw std::invalid_argument("layers must be at least 1");
        if (families.empty() || variants.empty() || optimizers.empty()) {
            throw std::invalid_argument("experiment needs at least one configuration");
        }
        (void)build_graph(degree);
    }
};

struct BatchResult {
    std::vector<BatchSummary> summaries;
    /// Grouped by configuration (summary order), then by simulation.
    std::vector<RunResult> runs;
};

/// Runs every (config, simulation) pair and folds them per configuration.
inline BatchResult run_batch(const std::vector<RunConfig>& configs, int simulations,
                             std::uint64_t master_seed, int workers,
                             const std::vector<Overrides>& overrides) {
    const std::size_t total = configs.size() * static_cast<std::size_t>(simulations);
    std::vector<std::optional<RunResult>> slots(total);
    parallel_for(total, workers, [&](std::size_t i) {
        const std::size_t c = i / static_cast<std::size_t>(simulations);
        const int sim = static_cast<int>(i % static_cast<std::size_t>(simulations));
        slots[i] = run_single(configs[c], master_seed, sim, overrides[c]);
    });
    BatchResult out;
    out.runs.reserve(total);
    for (auto& s : slots) out.runs.push_back(std::move(*s));
    for (std::size_t c = 0; c < configs.size(); ++c) {
        std::vector<const RunResult*> group;
        for (int sim = 0; sim < simulations; ++sim) {
            group.push_back(&out.runs[c * static_cast<std::size_t>(simulations) +
                                      static_cast<std::size_t>(sim)]);
        }
        out.summaries.push_back(summarize(configs[c], group));
    }
    return out;
}

/// Every ansatz family x variant x optimizer on shared instances.
inline BatchResult run_table2(const ExperimentConfig& config) {
    config.validate();
    std::vector<RunConfig> configs;
    for (AnsatzVariant v : config.variants) {
        for (AnsatzFamily f : config.families) {
            for (OptimizerKind o : config.optimizers) {
                configs.push_back({AnsatzSpec{f, v, config.layers, sdes::key_bits}, o,
                                   config.degree});
            }
        }
    }
    const std::vector<Overrides> ov(configs.size(), config.overrides);
    return run_batch(configs, config.simulations, config.master_seed, config.workers, ov);
}

/// Per-degree GD hyperparameters for the graph sweep.
struct DegreeSetting {
    int degree;
    double learning_rate;
    double restart_norm;
    /// Reference mean iterations for this setting, for comparison.
    double reference_average;
};

inline constexpr std::array<DegreeSetting, 7> degree_settings{{
    {1, 0.72, 0.53, 53.27},
    {2, 0.84, 0.62, 33.07},
    {3, 1.08, 0.80, 31.13},
    {4, 1.44, 1.07, 32.73},
    {5, 1.92, 1.42, 34.87},
    {6, 2.40, 1.78, 44.93},
    {7, 2.88, 2.13, 65.60},
}};

/// Reference energy levels per degree (graphs other than 1, 3
/// and 7 were not disclosed, so those columns are informational only).
struct ReferenceSpectrum {
    int degree;
    double ground;
    double highest;
    double first_excited;
    double ratio;
};

inline constexpr std::array<ReferenceSpectrum, 7> reference_spectra{{
    {1, -8, 4, -6, 0.1667},
    {2, -12, 8, -7, 0.2500},
    {3, -16, 8, -9, 0.2917},
    {4, -20, 9, -12, 0.2759},
    {5, -24, 12, -16, 0.2222},
    {6, -28, 8, -20, 0.2222},
    {7, -32, 4, -24, 0.2222},
}};

/// Y-Cz A with GD over degrees 1..7; cutoff is each graph's first excited
/// energy (the default from make_problem).
inline BatchResult run_degree_sweep(int simulations, std::uint64_t master_seed, int workers,
                                    int layers = 1) {
    if (simulations < 1) throw std::invalid_argument("simulations must be at least 1");
    std::vector<RunConfig> configs;
    std::vector<Overrides> overrides;
    for (const DegreeSetting& d : degree_settings) {
        configs.push_back({AnsatzSpec{AnsatzFamily::y_cz, AnsatzVariant::a, layers, sdes::key_bits},
                           OptimizerKind::gd, d.degree});
        Overrides o;
        o.learning_rate = d.learning_rate;
        o.restart_norm = d.restart_norm;
        overrides.push_back(o);
    }
    return run_batch(configs, simulations, master_seed, workers, overrides);
}

enum class Scenario { a, b, c, d };

inline char to_char(Scenario s) { return static_cast<char>('a' + static_cast<int>(s)); }

inline constexpr double entropy_rise_threshold = 0.2;

/// a: converged without restarts; b: converged without restarts after the
/// entropy rose at least `threshold` bits above its initial value;
/// c: converged after at least one restart; d: failed.
inline Scenario classify_trace(const AttackTrace& trace,
                               double threshold = entropy_rise_threshold) {
    if (!trace.success) return Scenario::d;
    if (trace.restarts > 0) return Scenario::c;
    if (!trace.records.empty()) {
        const double initial = trace.records.front().entropy;
        for (const TraceRecord& r : trace.records) {
            if (r.entropy - initial >= threshold) return Scenario::b;
        }
    }
    return Scenario::a;
}

} // namespace vqaa
