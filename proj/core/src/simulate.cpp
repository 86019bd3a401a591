#include "penosc/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "penosc/parallel.hpp"

namespace penosc {

void SimConfig::validate(int dim) const {
    if (!(dt > 0.0) || !(T > 0.0) || dt > T * (1.0 + 1e-12)) {
        throw ContractViolation("simulation needs 0 < dt <= T");
    }
    if (stride < 1 || static_cast<double>(stride) * dt > T * (1.0 + 1e-12)) {
        throw ContractViolation("simulation needs stride >= 1 and stride * dt <= T");
    }
    if (z0 && z0->dim() != dim) {
        throw ContractViolation("initial state has dimension " + std::to_string(z0->dim()) + ", model needs " +
                                std::to_string(dim));
    }
}

long SimConfig::steps() const {
    return std::max(1L, std::lround(T / dt));
}

double default_dt(const ModelSpec& spec) noexcept {
    return spec.n.value() <= 100 ? 1e-3 : 1e-4;
}

State em_step(const ModelSpec& spec, const State& z, double dt, double gaussian) {
    State out = detail::advance(spec, z, dt, std::sqrt(dt) * gaussian);
    if (!detail::finite(out)) {
        throw NonFiniteState(-1, "non-finite state after one Euler-Maruyama step");
    }
    return out;
}

Trajectory simulate_path(const ModelSpec& spec, const SimConfig& cfg) {
    Trajectory tr;
    tr.dim = spec.dimension();
    tr.model_digest = spec.digest();
    const long stride = cfg.stride;
    const std::size_t rows = static_cast<std::size_t>(cfg.steps() / stride) + 1;
    tr.times.reserve(rows);
    tr.states.reserve(rows);
    march(spec, cfg, [&](long k, double t, const State& z) {
        if (k % stride == 0) {
            tr.times.push_back(t);
            tr.states.push_back(z);
        }
        return true;
    });
    return tr;
}

EnsembleStat summarize(std::span<const double> values) {
    EnsembleStat s;
    s.samples = static_cast<long>(values.size());
    if (values.empty()) {
        return s;
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    s.estimate = mean;
    if (values.size() > 1) {
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        s.std_error = sd / std::sqrt(static_cast<double>(values.size()));
    }
    return s;
}

EnsembleStat ensemble_mean(const ModelSpec& spec, const SimConfig& cfg, long members,
                           const std::function<double(const Trajectory&)>& functional) {
    if (members < 2) {
        throw ContractViolation("an ensemble needs at least 2 members");
    }
    cfg.validate(spec.dimension());
    std::vector<double> out(static_cast<std::size_t>(members));
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            SimConfig c = cfg;
            c.seed = member_seed(cfg.seed, i);
            out[i] = functional(simulate_path(spec, c));
        }
    });
    return summarize(out);
}

EnsembleStat ensemble_time_average(const ModelSpec& spec, const SimConfig& cfg, long members,
                                   const std::function<double(const State&)>& g, double t_from) {
    if (members < 2) {
        throw ContractViolation("an ensemble needs at least 2 members");
    }
    cfg.validate(spec.dimension());
    const long steps = cfg.steps();
    const long k_from = std::clamp(static_cast<long>(std::ceil(t_from / cfg.dt - 1e-9)), 0L, steps - 1);
    const double span = static_cast<double>(steps - k_from) * cfg.dt;
    std::vector<double> out(static_cast<std::size_t>(members));
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            SimConfig c = cfg;
            c.seed = member_seed(cfg.seed, i);
            double sum = 0.0;
            march(spec, c, [&](long k, double, const State& z) {
                if (k >= k_from && k < steps) {
                    sum += g(z);
                }
                return true;
            });
            out[i] = sum * cfg.dt / span;
        }
    });
    return summarize(out);
}

double Histogram::bin_volume() const noexcept {
    double v = 1.0;
    for (const auto& a : axes) {
        v *= a.width();
    }
    return v;
}

std::vector<int> Histogram::unravel(std::size_t flat) const {
    std::vector<int> idx(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(axes[a].bins));
        flat /= static_cast<std::size_t>(axes[a].bins);
    }
    return idx;
}

Histogram empirical_invariant_density(const ModelSpec& spec, const SimConfig& cfg, double burn_in,
                                      std::vector<HistogramAxis> axes, int batches) {
    cfg.validate(spec.dimension());
    if (!(burn_in >= 0.0) || burn_in >= cfg.T) {
        throw ContractViolation("burn-in must lie in [0, T)");
    }
    if (axes.empty() || batches < 2) {
        throw ContractViolation("histogram needs at least one axis and two batches");
    }
    std::size_t bins = 1;
    for (const auto& a : axes) {
        if (a.component < 0 || a.component >= spec.dimension() || a.bins < 1 || !(a.lo < a.hi)) {
            throw ContractViolation("bad histogram axis");
        }
        bins *= static_cast<std::size_t>(a.bins);
    }
    const long steps = cfg.steps();
    const long k_burn = static_cast<long>(std::ceil(burn_in / cfg.dt - 1e-9));
    const long first = ((k_burn + cfg.stride - 1) / cfg.stride) * cfg.stride;
    const long total = first > steps ? 0 : (steps - first) / cfg.stride + 1;
    if (total < batches) {
        throw ContractViolation("fewer post burn-in samples than batches");
    }

    Histogram h;
    h.axes = std::move(axes);
    h.batches = batches;
    h.counts.assign(bins, 0.0);
    std::vector<std::vector<double>> batch_counts(static_cast<std::size_t>(batches), std::vector<double>(bins, 0.0));
    std::vector<long> batch_samples(static_cast<std::size_t>(batches), 0);

    long seen = 0;
    march(spec, cfg, [&](long k, double, const State& z) {
        if (k < first || k % cfg.stride != 0) {
            return true;
        }
        const auto b = static_cast<std::size_t>((seen * batches) / total);
        ++seen;
        ++batch_samples[b];
        std::size_t flat = 0;
        for (const auto& a : h.axes) {
            const double s = z[a.component];
            if (!(s >= a.lo && s < a.hi)) {
                ++h.outside;
                return true;
            }
            const int i = std::min(a.bins - 1, static_cast<int>((s - a.lo) / a.width()));
            flat = flat * static_cast<std::size_t>(a.bins) + static_cast<std::size_t>(i);
        }
        h.counts[flat] += 1.0;
        batch_counts[b][flat] += 1.0;
        return true;
    });
    h.samples = seen;
    if (h.outside == h.samples) {
        throw DomainError("no sample fell inside the histogram grid");
    }

    const double vol = h.bin_volume();
    h.density.resize(bins);
    h.density_stderr.resize(bins);
    std::vector<double> per_batch(static_cast<std::size_t>(batches));
    for (std::size_t j = 0; j < bins; ++j) {
        h.density[j] = h.counts[j] / (static_cast<double>(h.samples) * vol);
        for (int b = 0; b < batches; ++b) {
            per_batch[b] = batch_counts[b][j] / (static_cast<double>(batch_samples[b]) * vol);
        }
        h.density_stderr[j] = summarize(per_batch).std_error;
    }
    return h;
}

double crossing_statistic(const ModelSpec& spec, const SimConfig& cfg, const std::function<double(const State&)>& g) {
    const long steps = cfg.steps();
    double delta = 0.0;
    double peak = 0.0;
    march(spec, cfg, [&](long k, double, const State& z) {
        peak = std::max(peak, std::abs(delta));
        if (k < steps) {
            delta += g(z) * cfg.dt;
        }
        return true;
    });
    return peak;
}

IntegralMoments reduced_integral_moments(const ReducedFriction& model, const Observable& g, double dt,
                                         std::span<const double> taus, long members, std::uint64_t seed, double y0) {
    if (members < 2) {
        throw ContractViolation("an ensemble needs at least 2 members");
    }
    if (!(dt > 0.0) || taus.empty()) {
        throw ContractViolation("integral moments need dt > 0 and at least one time");
    }
    std::vector<long> ks;
    for (double tau : taus) {
        const long k = std::lround(tau / dt);
        if (k < 1 || (!ks.empty() && k <= ks.back())) {
            throw ContractViolation("times must be increasing and at least dt apart");
        }
        ks.push_back(k);
    }
    const std::size_t J = ks.size();
    const auto M = static_cast<std::size_t>(members);
    std::vector<double> delta(M * J);
    const double sqdt = std::sqrt(dt);
    parallel_for(M, [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            NormalStream rng(member_seed(seed, i));
            double y = y0;
            double d = 0.0;
            std::size_t j = 0;
            for (long k = 1; j < J; ++k) {
                d += g(y) * dt;
                y = model.step(y, dt, sqdt * rng());
                if (k == ks[j]) {
                    delta[i * J + j] = d;
                    ++j;
                }
            }
            if (!std::isfinite(d)) {
                throw NonFiniteState(ks.back(), "non-finite integral in member " + std::to_string(i));
            }
        }
    });

    IntegralMoments out;
    out.taus.reserve(J);
    std::vector<double> column(M);
    std::vector<double> squares(M);
    for (std::size_t j = 0; j < J; ++j) {
        out.taus.push_back(static_cast<double>(ks[j]) * dt);
        for (std::size_t i = 0; i < M; ++i) {
            column[i] = delta[i * J + j];
        }
        const EnsembleStat mean = summarize(column);
        for (std::size_t i = 0; i < M; ++i) {
            squares[i] = (column[i] - mean.estimate) * (column[i] - mean.estimate);
        }
        EnsembleStat var = summarize(squares);
        var.estimate *= static_cast<double>(M) / static_cast<double>(M - 1);
        out.mean.push_back(mean);
        out.variance.push_back(var);
    }
    return out;
}

}  // namespace penosc
