#pragma once

// Budgeted optimizers used to drive the attack:
//
//  * gd_minimize: forward-difference gradient descent with the step factor
//      r / |cost| + ln(times) / times * r0,   r0 ~ U[0, 1]
//    and a random restart whenever the gradient norm falls below a threshold.
//  * nm_minimize: Nelder-Mead with the acceptance rules below (note that the
//    reflection is accepted against f(x_1), not f(x_0)), and a random restart
//    when the simplex value spread falls below a threshold.
//
// Both count every objective call against a shared budget (`times`), and
// never exceed it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace vqaa {

using ParamVector = std::vector<double>;

struct GDConfig {
    double learning_rate = 1.08;
    double fd_step = 0.01;
    double restart_norm = 0.8;
    int budget = 1024;
    double cutoff = -9.0;
};

struct NMConfig {
    double amplification = 2.8;
    double zero_component_value = 0.8;
    double restart_spread = 0.15;
    int budget = 1024;
    double cutoff = -9.0;
};

struct OptimizerOutcome {
    ParamVector best_params;
    double best_value = std::numeric_limits<double>::infinity();
    /// Point whose value met the cutoff, or the last point examined otherwise.
    ParamVector final_params;
    double final_value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    int evaluations = 0;
    int restarts = 0;
    bool reached_cutoff = false;
};

/// Passed to the observer once per optimizer iteration.
struct IterationEvent {
    int iteration = 0;
    int evaluations = 0;
    std::span<const double> params;
    double value = 0.0;
    bool restarted = false;
    /// Nelder-Mead only: simplex values in sorted order.
    std::span<const double> simplex_values;
};

using IterationObserver = std::function<void(const IterationEvent&)>;

/// Counts objective calls and remembers the best point seen.
template <class Objective>
class EvaluationLedger {
  public:
    EvaluationLedger(Objective& f, int budget) : f_(f), budget_(budget) {}

    double operator()(std::span<const double> x) {
        if (calls_ >= budget_) {
            throw std::logic_error("objective evaluation past budget");
        }
        const double v = f_(x);
        ++calls_;
        if (v < best_value_) {
            best_value_ = v;
            best_.assign(x.begin(), x.end());
        }
        return v;
    }

    [[nodiscard]] int calls() const { return calls_; }
    [[nodiscard]] int remaining() const { return budget_ - calls_; }
    [[nodiscard]] const ParamVector& best_params() const { return best_; }
    [[nodiscard]] double best_value() const { return best_value_; }

  private:
    Objective& f_;
    int budget_;
    int calls_ = 0;
    ParamVector best_;
    double best_value_ = std::numeric_limits<double>::infinity();
};

/// Uniform point in [0, 2*pi)^dimension.
template <class Rng>
ParamVector random_angles(std::size_t dimension, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    ParamVector x(dimension);
    for (auto& v : x) v = u(rng);
    return x;
}

/// Forward differences: g_i = (f(x + h e_i) - base_value) / h. Costs
/// exactly x.size() evaluations.
template <class Objective>
ParamVector fd_gradient(Objective&& objective, std::span<const double> x, double base_value,
                        double step = 0.01) {
    ParamVector probe(x.begin(), x.end());
    ParamVector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + step;
        g[i] = (objective(std::span<const double>(probe)) - base_value) / step;
        probe[i] = x[i];
    }
    return g;
}

template <class Objective>
OptimizerOutcome gd_minimize(Objective&& objective, ParamVector x0, const GDConfig& config,
                             std::uint64_t seed, const IterationObserver& observer = {}) {
    if (config.learning_rate <= 0.0) throw std::invalid_argument("learning rate must be positive");
    if (x0.empty()) throw std::invalid_argument("empty starting point");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    EvaluationLedger ledger(objective, config.budget);
    OptimizerOutcome out;
    const std::size_t dim = x0.size();
    bool restarted = false;

    while (ledger.remaining() > 0) {
        const double cost = ledger(x0);
        ++out.iterations;
        out.final_params = x0;
        out.final_value = cost;
        if (observer) observer({out.iterations, ledger.calls(), x0, cost, restarted, {}});
        restarted = false;
        if (cost < config.cutoff) {
            out.reached_cutoff = true;
            break;
        }
        if (ledger.remaining() < static_cast<int>(dim)) break;

        const ParamVector grad = fd_gradient(ledger, x0, cost, config.fd_step);
        const double r0 = unit(rng);
        const double times = static_cast<double>(ledger.calls());
        const double factor = config.learning_rate / std::max(std::abs(cost), 1e-9) +
                              std::log(times) / times * r0;
        for (std::size_t i = 0; i < dim; ++i) x0[i] -= factor * grad[i];

        const double norm = std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
        if (norm < config.restart_norm) {
            x0 = random_angles(dim, rng);
            ++out.restarts;
            restarted = true;
        }
    }
    out.evaluations = ledger.calls();
    out.best_params = ledger.best_params();
    out.best_value = ledger.best_value();
    return out;
}

/// Reflection point 2m - worst.
inline ParamVector nm_reflect(std::span<const double> centroid, std::span<const double> worst) {
    ParamVector r(centroid.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = 2.0 * centroid[i] - worst[i];
    return r;
}

/// Moves every vertex but the first halfway toward it.
inline void nm_shrink(std::vector<ParamVector>& pts) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
        for (std::size_t k = 0; k < pts[i].size(); ++k) {
            pts[i][k] = pts[0][k] + (pts[i][k] - pts[0][k]) / 2.0;
        }
    }
}

/// Point i (1-based) scales component i-1 of x0 by `amplification`, or sets
/// it to `zero_value` when that component is zero.
inline std::vector<ParamVector> nm_initial_simplex(const ParamVector& x0, double amplification,
                                                   double zero_value) {
    std::vector<ParamVector> pts{x0};
    for (std::size_t i = 0; i < x0.size(); ++i) {
        ParamVector p = x0;
        p[i] = x0[i] == 0.0 ? zero_value : x0[i] * amplification;
        pts.push_back(std::move(p));
    }
    return pts;
}

template <class Objective>
OptimizerOutcome nm_minimize(Objective&& objective, ParamVector x0, const NMConfig& config,
                             std::uint64_t seed, const IterationObserver& observer = {}) {
    if (config.amplification <= 1.0) throw std::invalid_argument("amplification must exceed 1");
    if (x0.empty()) throw std::invalid_argument("empty starting point");
    const std::size_t n = x0.size();
    if (config.budget < static_cast<int>(n) + 1) {
        throw std::invalid_argument("budget smaller than the initial simplex");
    }
    std::mt19937_64 rng(seed);
    EvaluationLedger ledger(objective, config.budget);
    OptimizerOutcome out;

    std::vector<ParamVector> pts;
    std::vector<double> vals;
    auto build = [&](const ParamVector& start) {
        pts = nm_initial_simplex(start, config.amplification, config.zero_component_value);
        vals.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = ledger(pts[i]);
    };
    auto shrink = [&]() {
        nm_shrink(pts);
        for (std::size_t i = 1; i <= n; ++i) vals[i] = ledger(pts[i]);
    };
    auto point = [&](const ParamVector& from, const ParamVector& to, double t) {
        ParamVector p(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = from[k] + t * (to[k] - from[k]);
        return p;
    };

    build(x0);
    bool restarted = false;
    while (ledger.remaining() > 0) {
        // Stable sort keeps prior order among equal values.
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<ParamVector> sp(n + 1);
        std::vector<double> sv(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            sp[i] = std::move(pts[order[i]]);
            sv[i] = vals[order[i]];
        }
        pts = std::move(sp);
        vals = std::move(sv);

        ++out.iterations;
        out.final_params = pts[0];
        out.final_value = vals[0];
        if (observer) observer({out.iterations, ledger.calls(), pts[0], vals[0], restarted, vals});
        restarted = false;

        if (vals[0] <= config.cutoff) {
            out.reached_cutoff = true;
            break;
        }
        if (vals[n] - vals[0] < config.restart_spread) {
            if (ledger.remaining() < static_cast<int>(n) + 1) break;
            build(random_angles(n, rng));
            ++out.restarts;
            restarted = true;
            continue;
        }

        ParamVector m(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) m[k] += pts[i][k];
        }
        for (auto& v : m) v /= static_cast<double>(n);

        ParamVector r = nm_reflect(m, pts[n]);
        const double fr = ledger(r);
        const double f1 = vals[std::min<std::size_t>(1, n)];
        const double f_second_worst = vals[n - 1];
        const double f_worst = vals[n];

        if (f1 <= fr && fr < f_second_worst) {
            pts[n] = std::move(r);
            vals[n] = fr;
            continue;
        }
        if (fr < f1) {
            if (ledger.remaining() > 0) {
                ParamVector s = point(m, pts[n], -2.0); // m + 2(m - x_N)
                const double fs = ledger(s);
                if (fs < fr) {
                    pts[n] = std::move(s);
                    vals[n] = fs;
                    continue;
                }
            }
            pts[n] = std::move(r);
            vals[n] = fr;
            continue;
        }
        if (ledger.remaining() == 0) break;
        if (fr < f_worst) {
            ParamVector c1 = point(m, r, 0.5);
            const double fc = ledger(c1);
            if (fc < fr) {
                pts[n] = std::move(c1);
                vals[n] = fc;
                continue;
            }
        } else {
            ParamVector c2 = point(m, pts[n], 0.5);
            const double fc = ledger(c2);
            if (fc < f_worst) {
                pts[n] = std::move(c2);
                vals[n] = fc;
                continue;
            }
        }
        if (ledger.remaining() < static_cast<int>(n)) break;
        shrink();
    }
    out.evaluations = ledger.calls();
    out.best_params = ledger.best_params();
    out.best_value = ledger.best_value();
    return out;
}

} // namespace vqaa
