#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "penosc/error.hpp"
#include "penosc/model.hpp"
#include "penosc/observable.hpp"
#include "penosc/rng.hpp"

namespace penosc {

struct SimConfig {
    double dt = 1e-3;
    double T = 1.0;
    std::uint64_t seed = 0;
    std::optional<State> z0;  ///< origin when empty
    long stride = 1;

    /// Throws ContractViolation unless 0 < dt <= T, stride >= 1, stride dt <= T and
    /// z0 (when set) has dimension `dim`.
    void validate(int dim) const;
    [[nodiscard]] long steps() const;
};

/// 1e-3 for n <= 100, 1e-4 above (keeps n dt <= 0.1).
[[nodiscard]] double default_dt(const ModelSpec& spec) noexcept;

/// Euler-Maruyama produced a NaN or infinity.
class NonFiniteState : public DomainError {
public:
    NonFiniteState(long step, const std::string& what) : DomainError(what), step_(step) {}
    [[nodiscard]] long step() const noexcept { return step_; }

private:
    long step_;
};

/// z + F_n(z) dt + e_1 sqrt(dt) gaussian. Throws NonFiniteState (step -1) on overflow.
[[nodiscard]] State em_step(const ModelSpec& spec, const State& z, double dt, double gaussian);

namespace detail {
inline State advance(const ModelSpec& spec, const State& z, double dt, double dw) {
    State f = drift(spec, z);
    State out = z;
    for (int i = 0; i < z.dim(); ++i) {
        out[i] += f[i] * dt;
    }
    out[0] += dw;
    return out;
}

inline bool finite(const State& z) noexcept {
    for (double v : z.components()) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}
}  // namespace detail

/// Runs one Euler-Maruyama path and calls visit(k, t_k, z_k) for k = 0..steps;
/// the march stops early when the visitor returns false. Nothing is stored.
template <class Visitor>
void march(const ModelSpec& spec, const SimConfig& cfg, Visitor&& visit) {
    cfg.validate(spec.dimension());
    NormalStream rng(cfg.seed);
    State z = cfg.z0 ? *cfg.z0 : State(spec.dimension());
    const long steps = cfg.steps();
    const double sqdt = std::sqrt(cfg.dt);
    if (!visit(0L, 0.0, static_cast<const State&>(z))) {
        return;
    }
    for (long k = 1; k <= steps; ++k) {
        z = detail::advance(spec, z, cfg.dt, sqdt * rng());
        if (!detail::finite(z)) {
            throw NonFiniteState(k, "non-finite state at step " + std::to_string(k));
        }
        if (!visit(k, static_cast<double>(k) * cfg.dt, static_cast<const State&>(z))) {
            return;
        }
    }
}

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::uint64_t model_digest = 0;
    int dim = 2;
};

/// Samples every `stride` steps, starting at t = 0.
[[nodiscard]] Trajectory simulate_path(const ModelSpec& spec, const SimConfig& cfg);

struct EnsembleStat {
    double estimate = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(samples)
    long samples = 0;
};

[[nodiscard]] EnsembleStat summarize(std::span<const double> values);

/// Member i runs with seed member_seed(cfg.seed, i). Throws ContractViolation for M < 2.
[[nodiscard]] EnsembleStat ensemble_mean(const ModelSpec& spec, const SimConfig& cfg, long members,
                                         const std::function<double(const Trajectory&)>& functional);

/// Streaming variant: per member, the left-endpoint time average of g over [t_from, T].
[[nodiscard]] EnsembleStat ensemble_time_average(const ModelSpec& spec, const SimConfig& cfg, long members,
                                                 const std::function<double(const State&)>& g,
                                                 double t_from = 0.0);

struct HistogramAxis {
    int component = 0;  ///< index into the state vector
    double lo = -1.0;
    double hi = 1.0;
    int bins = 10;

    [[nodiscard]] double width() const noexcept { return (hi - lo) / bins; }
    [[nodiscard]] double center(int i) const noexcept { return lo + (i + 0.5) * width(); }
};

/// Row-major histogram (last axis fastest). `density` integrates to the fraction of
/// samples inside the grid; `density_stderr` comes from non-overlapping batch means.
struct Histogram {
    std::vector<HistogramAxis> axes;
    std::vector<double> counts;
    std::vector<double> density;
    std::vector<double> density_stderr;
    long samples = 0;
    long outside = 0;
    int batches = 0;

    [[nodiscard]] std::size_t size() const noexcept { return counts.size(); }
    [[nodiscard]] double bin_volume() const noexcept;
    /// Bin indices of flat index `flat`, one per axis.
    [[nodiscard]] std::vector<int> unravel(std::size_t flat) const;
};

/// 10% of T.
[[nodiscard]] inline double default_burn_in(const SimConfig& cfg) noexcept { return 0.1 * cfg.T; }

/// Histogram of the post burn-in states of one path, one sample every `stride`
/// steps. Throws ContractViolation when burn_in >= T and DomainError when no
/// sample lands inside the grid.
[[nodiscard]] Histogram empirical_invariant_density(const ModelSpec& spec, const SimConfig& cfg, double burn_in,
                                                    std::vector<HistogramAxis> axes, int batches = 20);

/// max over t <= T of |Delta_g(t)|, Delta_g(t_k) = sum_{j<k} g(Z_j) dt.
[[nodiscard]] double crossing_statistic(const ModelSpec& spec, const SimConfig& cfg,
                                        const std::function<double(const State&)>& g);

/// Velocity of the friction model without restoring force:
///   dY = -(C_b Y + a_n'(Y)) dt + dW.
/// Used by the one-dimensional Monte Carlo estimators.
struct ReducedFriction {
    PenalizationLevel n{100};
    double damping = 1.0;

    [[nodiscard]] double step(double y, double dt, double dw) const noexcept {
        return y - (damping * y + a_n_prime(y, n)) * dt + dw;
    }
};

/// Mean and variance of Delta_g(tau) = int_0^tau g(Y_s) ds over `members` paths of
/// the reduced friction velocity from Y_0 = y0, at every tau of `taus` (increasing,
/// each rounded to the nearest step). Member i uses member_seed(seed, i).
struct IntegralMoments {
    std::vector<double> taus;
    std::vector<EnsembleStat> mean;
    std::vector<EnsembleStat> variance;  ///< std_error from the spread of (Delta - mean)^2
};

[[nodiscard]] IntegralMoments reduced_integral_moments(const ReducedFriction& model, const Observable& g,
                                                       double dt, std::span<const double> taus, long members,
                                                       std::uint64_t seed, double y0 = 0.0);

}  // namespace penosc
