#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <variant>

#include "penosc/assumptions.hpp"

namespace penosc {

/// Forcing N_t = dW/dt. State (y, x).
struct WhiteNoise {};

/// Overdamped Langevin forcing d eta = -v'(eta) dt + dW. State (eta, y, x).
/// `r` is the declared confinement constant, v'(eta) eta >= r eta^2.
/// `beta` parameterizes the stationary law rho ~ exp(-beta v); the simulated
/// diffusion is 1, which corresponds to beta = 2.
struct OverdampedNoise {
    std::function<double(double)> v_prime;
    double r = 1.0;
    double beta = 2.0;
    double theta = 0.0;  ///< stiffness of the built-in Ornstein-Uhlenbeck case, 0 otherwise
    std::string label = "custom";

    /// v(eta) = theta eta^2 / 2, r = theta.
    static OverdampedNoise ornstein_uhlenbeck(double theta, double beta = 2.0);

    [[nodiscard]] double sigma() const { return std::sqrt(2.0 / beta); }
};

/// Scalar field on the (eta, zeta) plane with the partial derivatives the
/// generator needs.
struct PlanarField {
    using Fn = std::function<double(double eta, double zeta)>;
    Fn value;
    Fn d_eta;
    Fn d_zeta;
    Fn d_zeta_zeta;

    [[nodiscard]] bool complete() const noexcept {
        return value && d_eta && d_zeta && d_zeta_zeta;
    }
};

/// Stochastic Hamiltonian forcing
///   d zeta = B1 dt + dW,  d eta = B2 dt,
///   B1 = -dH/deta - F dH/dzeta,  B2 = dH/dzeta.
/// State (zeta, eta, y, x). `correction` is the function R of the Lyapunov
/// construction; `delta_tilde` and `bound_m` are the declared constants of
///   H + R + M >= delta_tilde (eta^2 + zeta^2),
///   L(H + R) <= -delta_tilde (H + R) + M,
/// with L = (1/2) d_zeta_zeta + B1 d_zeta + B2 d_eta.
struct HamiltonianNoise {
    PlanarField hamiltonian;
    std::function<double(double eta, double zeta)> dissipation;
    PlanarField correction;
    double delta_tilde = 0.0;
    double bound_m = 0.0;
    double holder_alpha = 1.0;
    double holder_kappa = 0.0;
    double ell = 0.0;  ///< lower bound of dB2/dzeta
    std::string label = "custom";
    double kt_stiffness = 0.0;
    double kt_damping = 0.0;

    [[nodiscard]] double b1(double eta, double zeta) const {
        return -hamiltonian.d_eta(eta, zeta) - dissipation(eta, zeta) * hamiltonian.d_zeta(eta, zeta);
    }
    [[nodiscard]] double b2(double eta, double zeta) const { return hamiltonian.d_zeta(eta, zeta); }

    /// (H + R)(eta, zeta)
    [[nodiscard]] double energy(double eta, double zeta) const {
        return hamiltonian.value(eta, zeta) + correction.value(eta, zeta);
    }

    /// L(H + R)(eta, zeta), the noise generator applied to H + R.
    [[nodiscard]] double generator_of_energy(double eta, double zeta) const;

    /// Kanai-Tajimi filter: H = (k/2) eta^2 + zeta^2 / 2, F = gamma0.
    /// R = c eta zeta with c, delta_tilde and M chosen so that both sampled
    /// inequalities above hold for every (eta, zeta); see kanai_tajimi_correction.
    static HamiltonianNoise kanai_tajimi(double stiffness, double damping);
};

/// Constants of the Kanai-Tajimi Lyapunov correction R = c eta zeta.
struct KanaiTajimiCorrection {
    double c = 0.0;
    double delta_tilde = 0.0;
    double bound_m = 0.0;
};

/// Picks c and the largest delta_tilde (scaled by 0.9) for which the three
/// quadratic forms behind the energy bounds are sign-definite with
/// epsilon = delta_tilde / 2, and M = 1 / delta_tilde.
[[nodiscard]] KanaiTajimiCorrection kanai_tajimi_correction(double stiffness, double damping);

using NoiseSpec = std::variant<WhiteNoise, OverdampedNoise, HamiltonianNoise>;

[[nodiscard]] int noise_dimension(const NoiseSpec& noise) noexcept;
[[nodiscard]] std::string noise_name(const NoiseSpec& noise);

/// Sampled noise assumptions: for OverdampedNoise the confinement v'(eta) eta >= r eta^2
/// on `grid`; for HamiltonianNoise the two energy inequalities and dB2/dzeta >= ell on
/// grid x grid. White noise has nothing to check.
[[nodiscard]] AssumptionReport check_noise_assumptions(const NoiseSpec& noise, std::span<const double> grid);

}  // namespace penosc
