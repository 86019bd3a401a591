#include "penosc/crossing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "penosc/error.hpp"
#include "penosc/parallel.hpp"
#include "penosc/rng.hpp"
#include "penosc/simulate.hpp"

namespace penosc {

std::string method_name(CrossingMethod method) {
    switch (method) {
        case CrossingMethod::Series: return "series";
        case CrossingMethod::MonteCarlo: return "mc";
        case CrossingMethod::Asymptotic: return "asymptotic";
    }
    return "?";
}

CrossingEstimate w_star(double b, double T, double tol) {
    if (!(b > 0.0) || !(T > 0.0) || !(tol > 0.0)) {
        throw ContractViolation("w_star needs b > 0, T > 0 and tol > 0");
    }
    const double scale = 4.0 / std::numbers::pi;
    const double rate = std::numbers::pi * std::numbers::pi * T / (8.0 * b * b);
    double sum = 0.0;
    double next = 0.0;
    for (long k = 0;; ++k) {
        const double odd = 2.0 * static_cast<double>(k) + 1.0;
        const double term = (k % 2 == 0 ? 1.0 : -1.0) * std::exp(-odd * odd * rate) / odd;
        if (scale * std::abs(term) < tol) {
            next = std::abs(term);
            break;
        }
        sum += term;
    }
    CrossingEstimate est;
    est.probability = std::clamp(1.0 - scale * sum, 0.0, 1.0);
    est.truncation_bound = scale * next;
    est.method = CrossingMethod::Series;
    est.b = b;
    est.T = T;
    return est;
}

void CrossingQuery::validate() const {
    if (!(b >= 0.0) || !(T > 0.0) || !(p >= 1.0)) {
        throw ContractViolation("crossing query needs b >= 0, T > 0 and p >= 1");
    }
}

std::vector<CrossingEstimate> estimate_crossing_curve(const ModelSpec& spec, double b, double p,
                                                      std::span<const double> horizons, const Observable& g,
                                                      long members, double dt, std::uint64_t seed) {
    if (members < 100) {
        throw ContractViolation("crossing estimates need at least 100 paths");
    }
    if (horizons.empty() || !(dt > 0.0)) {
        throw ContractViolation("crossing curve needs horizons and dt > 0");
    }
    for (double h : horizons) {
        CrossingQuery{b, h, p}.validate();
    }
    const double level = std::sqrt(p) * b;
    const double horizon = p * *std::max_element(horizons.begin(), horizons.end());
    const long K = std::max(1L, std::lround(horizon / dt));
    const long never = K + 1;

    std::vector<long> first(static_cast<std::size_t>(members), never);
    const bool reduced = is_reduced_friction(spec);
    const ReducedFriction kernel{spec.n, spec.damping};
    const double sqdt = std::sqrt(dt);
    parallel_for(first.size(), [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t s = member_seed(seed, i);
            if (level <= 0.0) {
                first[i] = 0;
                continue;
            }
            if (reduced) {
                NormalStream rng(s);
                double y = 0.0;
                double delta = 0.0;
                for (long k = 1; k <= K; ++k) {
                    delta += g(y) * dt;
                    y = kernel.step(y, dt, sqdt * rng());
                    if (std::abs(delta) >= level) {
                        first[i] = k;
                        break;
                    }
                }
                continue;
            }
            SimConfig cfg;
            cfg.dt = dt;
            cfg.T = static_cast<double>(K) * dt;
            cfg.seed = s;
            double delta = 0.0;
            march(spec, cfg, [&](long k, double, const State& z) {
                if (std::abs(delta) >= level) {
                    first[i] = k;
                    return false;
                }
                delta += g(z) * dt;
                return true;
            });
        }
    });

    std::vector<CrossingEstimate> out;
    for (double h : horizons) {
        const long kh = std::lround(p * h / dt);
        const long hits = std::count_if(first.begin(), first.end(), [kh](long k) { return k <= kh; });
        CrossingEstimate est;
        est.samples = members;
        est.probability = static_cast<double>(hits) / static_cast<double>(members);
        est.std_error = std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(members));
        est.method = CrossingMethod::MonteCarlo;
        est.b = b;
        est.T = h;
        est.p = p;
        out.push_back(est);
    }
    return out;
}

CrossingEstimate estimate_crossing(const ModelSpec& spec, const CrossingQuery& query, const Observable& g,
                                   long members, double dt, std::uint64_t seed) {
    query.validate();
    const double h = query.T;
    return estimate_crossing_curve(spec, query.b, query.p, std::span<const double>(&h, 1), g, members, dt, seed)
        .front();
}

CrossingEstimate asymptotic_crossing(double gamma_squared, double b, double T) {
    if (!(gamma_squared > 0.0)) {
        throw DomainError("asymptotic crossing needs gamma^2 > 0");
    }
    CrossingEstimate est = w_star(b / std::sqrt(gamma_squared), T);
    est.method = CrossingMethod::Asymptotic;
    est.b = b;
    return est;
}

CrossingEstimate asymptotic_crossing(const GammaEstimate& gamma, double b, double T) {
    return asymptotic_crossing(gamma.gamma_squared, b, T);
}

}  // namespace penosc
