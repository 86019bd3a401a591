#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "penosc/noise.hpp"
#include "penosc/penalization.hpp"
#include "penosc/potential.hpp"
#include "penosc/state.hpp"

namespace penosc {

enum class ModelKind { ElastoPlastic, Friction, Obstacle };

[[nodiscard]] std::string model_key(ModelKind kind);  // "epp", "fp", "op"
[[nodiscard]] ModelKind parse_model_kind(const std::string& key);

/// Fully determines the penalized SDE dZ = F_n(Z) dt + e_1 dW.
///
/// Penalty placement per model:
///   ElastoPlastic: f_{n,y} = 0,      f_{n,x} = chi_n',  potential U
///   Friction:      f_{n,y} = a_n',   f_{n,x} = 0,       potential U
///   Obstacle:      f_{n,y} = 0,      f_{n,x} = 0,       potential U_n = U + chi_n
struct ModelSpec {
    ModelKind kind = ModelKind::Friction;
    PenalizationLevel n{100};
    double damping = 1.0;  ///< C_b
    Potential potential = Potential::quadratic(1.0);
    NoiseSpec noise = WhiteNoise{};

    [[nodiscard]] int dimension() const noexcept { return noise_dimension(noise); }

    /// f_{n,y}(y)
    [[nodiscard]] double penalty_y(double y) const noexcept {
        return kind == ModelKind::Friction ? a_n_prime(y, n) : 0.0;
    }
    /// f_{n,x}(x)
    [[nodiscard]] double penalty_x(double x) const noexcept {
        return kind == ModelKind::ElastoPlastic ? chi_n_prime(x, n) : 0.0;
    }
    /// U(x), or U_n(x) = U(x) + chi_n(x) for the obstacle model.
    [[nodiscard]] double effective_potential(double x) const {
        const double u = potential.value(x);
        return kind == ModelKind::Obstacle ? u + chi_n(x, n) : u;
    }
    [[nodiscard]] double effective_potential_prime(double x) const {
        const double du = potential.derivative(x);
        return kind == ModelKind::Obstacle ? du + chi_n_prime(x, n) : du;
    }

    /// Canonical key=value description, one entry per line.
    [[nodiscard]] std::string describe() const;
    /// FNV-1a hash of describe(); used as trajectory provenance.
    [[nodiscard]] std::uint64_t digest() const;
};

/// True when the velocity decouples from x: friction, white noise, U == 0.
[[nodiscard]] bool is_reduced_friction(const ModelSpec& spec) noexcept;

/// F_n(z). Throws ContractViolation when z.dim() differs from spec.dimension().
[[nodiscard]] State drift(const ModelSpec& spec, const State& z);

/// The penalty pair (f_{n,y}, f_{n,x}) as closures so a check can be pointed at
/// synthetic terms.
struct PenaltyTerms {
    std::function<double(double)> f_y;
    std::function<double(double)> f_x;
};

[[nodiscard]] PenaltyTerms penalty_terms(const ModelSpec& spec);

/// Sampled check of |f_{n,y}| <= 1 and 0 <= sign(x) f_{n,x}(x) <= n|x|.
struct PenaltyReport {
    double max_abs_f_y = 0.0;
    double min_slack_y = 0.0;        ///< min of 1 - |f_{n,y}|
    double min_slack_x_lower = 0.0;  ///< min of sign(x) f_{n,x}
    double min_slack_x_upper = 0.0;  ///< min of n|x| - sign(x) f_{n,x}
    std::vector<double> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

[[nodiscard]] PenaltyReport check_hpx_hpy(const PenaltyTerms& terms, PenalizationLevel n,
                                          std::span<const double> grid);
[[nodiscard]] PenaltyReport check_hpx_hpy(const ModelSpec& spec, std::span<const double> grid);

/// `count` equally spaced points of [lo, hi], endpoints included.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace penosc
