#include "penosc/noise.hpp"

#include <algorithm>
#include <cmath>

#include "penosc/error.hpp"

namespace penosc {

OverdampedNoise OverdampedNoise::ornstein_uhlenbeck(double theta, double beta) {
    if (!(theta > 0.0) || !(beta > 0.0)) {
        throw ContractViolation("Ornstein-Uhlenbeck noise needs theta > 0 and beta > 0");
    }
    OverdampedNoise noise;
    noise.v_prime = [theta](double eta) { return theta * eta; };
    noise.r = theta;
    noise.beta = beta;
    noise.theta = theta;
    noise.label = "ou";
    return noise;
}

double HamiltonianNoise::generator_of_energy(double eta, double zeta) const {
    const double e_zeta = hamiltonian.d_zeta(eta, zeta) + correction.d_zeta(eta, zeta);
    const double e_eta = hamiltonian.d_eta(eta, zeta) + correction.d_eta(eta, zeta);
    const double e_zz = hamiltonian.d_zeta_zeta(eta, zeta) + correction.d_zeta_zeta(eta, zeta);
    return 0.5 * e_zz + b1(eta, zeta) * e_zeta + b2(eta, zeta) * e_eta;
}

namespace {

bool psd(double a, double b, double d) {
    return a >= 0.0 && d >= 0.0 && a * d - b * b >= 0.0;
}

// The three quadratic forms for H = k eta^2/2 + zeta^2/2, R = c eta zeta,
// F = gamma0, eps = dt/2, M = 1/dt (dt = delta_tilde); rows (eta, zeta).
bool kt_feasible(double k, double g0, double c, double dt) {
    const double eps = 0.5 * dt;
    // H + R - dt (eta^2 + zeta^2) >= 0
    const bool lower = psd(0.5 * k - dt, 0.5 * c, 0.5 - dt);
    // L(H+R) + dt (H+R) - 1/2 <= 0, i.e. the negated form is PSD
    const bool contraction = psd(c * k - 0.5 * dt * k, 0.5 * c * (g0 - dt), (g0 - c) - 0.5 * dt);
    // -(L(H+R) + eps (H+R)) - dt^2 (eta^2 + zeta^2) >= 0
    const bool drift = psd(c * k - 0.5 * eps * k - dt * dt, 0.5 * c * (g0 - eps), g0 - c - 0.5 * eps - dt * dt);
    return lower && contraction && drift && 0.5 + eps / dt <= 1.0 + 1e-15;
}

}  // namespace

KanaiTajimiCorrection kanai_tajimi_correction(double stiffness, double damping) {
    if (!(stiffness > 0.0) || !(damping > 0.0)) {
        throw ContractViolation("Kanai-Tajimi noise needs k > 0 and gamma0 > 0");
    }
    const double c_max = std::min(damping, std::sqrt(stiffness));
    const double dt_max = std::min({0.5 * stiffness, 0.5, 1.0});
    KanaiTajimiCorrection best;
    constexpr int kC = 400;
    constexpr int kDt = 4000;
    for (int i = 1; i < kC; ++i) {
        const double c = c_max * i / kC;
        for (int j = kDt; j >= 1; --j) {
            const double dt = dt_max * j / kDt;
            if (dt <= best.delta_tilde) {
                break;
            }
            if (kt_feasible(stiffness, damping, c, dt)) {
                best.c = c;
                best.delta_tilde = dt;
                break;
            }
        }
    }
    if (best.delta_tilde <= 0.0) {
        throw DomainError("no admissible Kanai-Tajimi correction found");
    }
    best.delta_tilde *= 0.9;
    best.bound_m = 1.0 / best.delta_tilde;
    return best;
}

HamiltonianNoise HamiltonianNoise::kanai_tajimi(double stiffness, double damping) {
    const KanaiTajimiCorrection corr = kanai_tajimi_correction(stiffness, damping);
    const double k = stiffness;
    const double c = corr.c;
    HamiltonianNoise noise;
    noise.hamiltonian.value = [k](double eta, double zeta) { return 0.5 * k * eta * eta + 0.5 * zeta * zeta; };
    noise.hamiltonian.d_eta = [k](double eta, double) { return k * eta; };
    noise.hamiltonian.d_zeta = [](double, double zeta) { return zeta; };
    noise.hamiltonian.d_zeta_zeta = [](double, double) { return 1.0; };
    noise.dissipation = [damping](double, double) { return damping; };
    noise.correction.value = [c](double eta, double zeta) { return c * eta * zeta; };
    noise.correction.d_eta = [c](double, double zeta) { return c * zeta; };
    noise.correction.d_zeta = [c](double eta, double) { return c * eta; };
    noise.correction.d_zeta_zeta = [](double, double) { return 0.0; };
    noise.delta_tilde = corr.delta_tilde;
    noise.bound_m = corr.bound_m;
    noise.holder_alpha = 1.0;
    noise.holder_kappa = 0.0;
    noise.ell = 1.0;
    noise.label = "kt";
    noise.kt_stiffness = stiffness;
    noise.kt_damping = damping;
    return noise;
}

int noise_dimension(const NoiseSpec& noise) noexcept {
    return static_cast<int>(noise.index()) + 2;
}

std::string noise_name(const NoiseSpec& noise) {
    switch (noise.index()) {
        case 0: return "white";
        case 1: return std::get<OverdampedNoise>(noise).label;
        default: return std::get<HamiltonianNoise>(noise).label;
    }
}

AssumptionReport check_noise_assumptions(const NoiseSpec& noise, std::span<const double> grid) {
    AssumptionReport report;
    if (const auto* od = std::get_if<OverdampedNoise>(&noise)) {
        if (!od->v_prime) {
            throw ContractViolation("overdamped noise without v'");
        }
        InequalityTally confine("confinement");
        for (double eta : grid) {
            confine.record(od->r * eta * eta, od->v_prime(eta) * eta, eta);
        }
        report.checks.push_back(confine.finish());
    } else if (const auto* hn = std::get_if<HamiltonianNoise>(&noise)) {
        if (!hn->hamiltonian.complete() || !hn->correction.complete() || !hn->dissipation) {
            throw ContractViolation("Hamiltonian noise needs H, R and all their partial derivatives");
        }
        InequalityTally lower("energy-lower-bound");
        InequalityTally contraction("energy-contraction");
        InequalityTally monotone("dB2/dzeta >= ell");
        const double dt = hn->delta_tilde;
        const double m = hn->bound_m;
        for (double eta : grid) {
            for (double zeta : grid) {
                const double e = hn->energy(eta, zeta);
                lower.record(dt * (eta * eta + zeta * zeta), e + m, eta);
                contraction.record(hn->generator_of_energy(eta, zeta), -dt * e + m, eta);
                monotone.record(hn->ell, hn->hamiltonian.d_zeta_zeta(eta, zeta), eta);
            }
        }
        report.checks = {lower.finish(), contraction.finish(), monotone.finish()};
    }
    return report;
}

}  // namespace penosc
