#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "penosc/model.hpp"
#include "penosc/observable.hpp"
#include "penosc/pde.hpp"

namespace penosc {

enum class CrossingMethod { Series, MonteCarlo, Asymptotic };

[[nodiscard]] std::string method_name(CrossingMethod method);

struct CrossingEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    long samples = 0;
    CrossingMethod method = CrossingMethod::Series;
    double truncation_bound = 0.0;  ///< series only
    double b = 0.0;
    double T = 0.0;
    double p = 1.0;
};

/// P(max_{t <= T} |W_t| >= b) = 1 - (4/pi) sum_k (-1)^k/(2k+1) exp(-(2k+1)^2 pi^2 T / (8 b^2)).
/// Stops once the next term is below `tol`; the alternating tail is then below
/// (4/pi) times that term, which is reported as truncation_bound. Clamped to [0, 1].
/// Throws ContractViolation unless b, T, tol > 0.
[[nodiscard]] CrossingEstimate w_star(double b, double T, double tol = 1e-12);

struct CrossingQuery {
    double b = 0.6;
    double T = 20.0;
    double p = 1.0;

    void validate() const;  ///< b >= 0, T > 0, p >= 1
};

/// Fraction of `members` paths whose running max of |Delta_g| over [0, pT] reaches
/// sqrt(p) b, with binomial standard error. Paths follow the full model; the reduced
/// friction kernel is used when is_reduced_friction(spec). Throws ContractViolation
/// for members < 100.
[[nodiscard]] CrossingEstimate estimate_crossing(const ModelSpec& spec, const CrossingQuery& query,
                                                 const Observable& g, long members, double dt,
                                                 std::uint64_t seed = 0);

/// One Monte Carlo pass giving the crossing curve at every horizon in `horizons`
/// (in unscaled units; each is multiplied by p). Same conventions as estimate_crossing.
[[nodiscard]] std::vector<CrossingEstimate> estimate_crossing_curve(const ModelSpec& spec, double b, double p,
                                                                    std::span<const double> horizons,
                                                                    const Observable& g, long members, double dt,
                                                                    std::uint64_t seed = 0);

/// w_star(b / gamma, T). Throws DomainError when gamma^2 <= 0.
[[nodiscard]] CrossingEstimate asymptotic_crossing(const GammaEstimate& gamma, double b, double T);
[[nodiscard]] CrossingEstimate asymptotic_crossing(double gamma_squared, double b, double T);

}  // namespace penosc
