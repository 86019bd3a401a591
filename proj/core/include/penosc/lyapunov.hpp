#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "penosc/model.hpp"

namespace penosc {

/// Constants of the Lyapunov functions
///   V2 = delta (y^2/2 + U(x)) + x y + C_V
///   V3 = (xi/2) eta^2 + V2
///   V4 = K (H + R + M) + V2
/// and of the closed-form drift bounds. U is the effective potential of the model
/// (U_n for the obstacle). Noise constants (r, delta_tilde, M) are copied from the
/// noise spec; the unused ones stay 0.
struct LyapunovConstants {
    int dim = 2;
    double margin = 1.01;
    double n = 1.0;
    double damping = 1.0;

    double delta = 0.0;
    double c_v = 0.0;
    double xi = 0.0;
    double k = 0.0;
    double epsilon = 0.0;

    double lambda1 = 0.0;
    double beta1 = 0.0;
    double lambda3 = 0.0;
    double beta3 = 0.0;
    double beta4 = 0.0;
    double gamma = 0.0;        ///< beta3 + (delta beta4 n)^2 / lambda3
    double gamma_tilde = 0.0;  ///< 3 lambda3 / 4

    double r = 0.0;
    double delta_tilde = 0.0;
    double bound_m = 0.0;

    double k2 = 0.0, k2y = 0.0, k2x = 0.0;
    double k3 = 0.0, k3eta = 0.0, k3y = 0.0, k3x = 0.0;
    double k4 = 0.0, k4zeta = 0.0, k4eta = 0.0, k4y = 0.0, k4x = 0.0;

    // Strict lower (upper for epsilon) bounds the margin was applied to.
    double delta_floor = 0.0;
    double xi_floor = 0.0;
    double k_floor = 0.0;
    double epsilon_ceiling = 0.0;
};

/// Each strict lower bound times `margin`, epsilon at ceiling / (2 margin), C_V at
/// its floor 1 + delta beta1. The epsilon ceiling is min(lambda3/delta, C_b, r, 1)
/// for colored noise of the first kind, with delta_tilde in place of r for the
/// Hamiltonian kind, and without r for white noise. Throws DomainError when a bound
/// is not finite (lambda3 = 0, e.g. U == 0) and ContractViolation when margin < 1.
[[nodiscard]] LyapunovConstants select_constants(const ModelSpec& spec, double margin = 1.01);

[[nodiscard]] double eval_V(const LyapunovConstants& c, const ModelSpec& spec, const State& z);

/// (A_n V + eps V)(z) from the closed-form partial derivatives of V, where A_n is
/// (1/2) d^2/dz_1^2 + F_n . grad. Throws ContractViolation for Hamiltonian noise
/// whose H or R lacks a partial derivative.
[[nodiscard]] double eval_AV_plus_epsV(const LyapunovConstants& c, const ModelSpec& spec, const State& z);

// Pieces of the expansion, each with its claimed pointwise upper bound.
//   S1 = delta eps U - U'(x + delta f_x)             <= Gamma - Gamma~ x^2
//   S2 = -y [x (C_b - eps) + f_x] - f_y (delta y + x)
//        <= (C_b + n)^2 y^2 / (2 Gamma~) + (Gamma~/2) x^2 + delta|y| + |x|
//   S3 = xi/2 - v' xi eta + eps xi eta^2 / 2           <= xi/2 - (xi r/2) eta^2
//   S4 = K L(H + R) + eps K (H + R + M)
//        <= M (1 + K delta~) - K delta~^2 (zeta^2 + eta^2)
[[nodiscard]] double s1(const LyapunovConstants& c, const ModelSpec& spec, double x);
[[nodiscard]] double s1_bound(const LyapunovConstants& c, double x);
[[nodiscard]] double s2(const LyapunovConstants& c, const ModelSpec& spec, double y, double x);
[[nodiscard]] double s2_bound(const LyapunovConstants& c, double y, double x);
[[nodiscard]] double s3(const LyapunovConstants& c, const ModelSpec& spec, double eta);
[[nodiscard]] double s3_bound(const LyapunovConstants& c, double eta);
[[nodiscard]] double s4(const LyapunovConstants& c, const ModelSpec& spec, double eta, double zeta);
[[nodiscard]] double s4_bound(const LyapunovConstants& c, double eta, double zeta);

/// Framed right-hand side for the dimension of z, e.g. for d = 2
///   K2 - K2y y^2 - K2x x^2 + delta |y| + |x|.
[[nodiscard]] double framed_bound(const LyapunovConstants& c, const State& z);

/// Rectangular grid: axis i has `points[i]` equally spaced nodes on [lo[i], hi[i]].
struct DriftGrid {
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<std::size_t> points;

    /// points^dim nodes on [lo, hi]^dim.
    static DriftGrid cube(int dim, double lo, double hi, std::size_t points);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(points.size()); }
    [[nodiscard]] std::size_t size() const noexcept;
    [[nodiscard]] State point(std::size_t flat) const;
    [[nodiscard]] std::string describe() const;
};

struct DriftPoint {
    State z;
    double value = 0.0;
    double bound = 0.0;
};

struct DriftReport {
    std::string grid;
    std::size_t points = 0;
    double sup_value = 0.0;  ///< max of (A V + eps V) over the grid
    State argmax;
    double inferred_c = 0.0;  ///< smallest C with (A V + eps V) <= C on the grid
    double min_slack = 0.0;   ///< min of bound - value
    double mean_slack = 0.0;
    double min_v = 0.0;
    std::size_t v_below_one = 0;
    std::size_t violation_count = 0;
    std::vector<DriftPoint> violations;  ///< first `max_recorded` violations in grid order

    [[nodiscard]] bool ok() const noexcept { return violation_count == 0 && v_below_one == 0; }
};

using DriftEvaluator = std::function<double(const State&)>;

/// Evaluates (A V + eps V) at every grid node and compares it with framed_bound.
/// A violation is value > bound + 1e-12 (1 + |value| + |bound|). Optional `value_of`
/// and `v_of` replace the analytic evaluations (used to check the checker).
/// Nodes are split across default_thread_count() threads.
[[nodiscard]] DriftReport certify_drift(const LyapunovConstants& c, const ModelSpec& spec, const DriftGrid& grid,
                                        const DriftEvaluator& value_of = {}, const DriftEvaluator& v_of = {},
                                        std::size_t max_recorded = 1000);

}  // namespace penosc
