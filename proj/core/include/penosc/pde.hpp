#pragma once

#include <span>
#include <string>
#include <vector>

#include "penosc/observable.hpp"
#include "penosc/penalization.hpp"

namespace penosc {

/// Nodes y_i = -L + (i - 1) dy, i = 1..N, dy = 2L / (N - 1); T / dt steps.
struct Grid1D {
    double L = 10.0;
    long N = 2001;
    double dt = 1e-3;
    double T = 100.0;

    /// Throws ContractViolation unless L > 0, N >= 3, dt > 0, T > 0 and T / dt is
    /// an integer (to 1e-9 relative).
    void validate() const;
    [[nodiscard]] double dy() const noexcept { return 2.0 * L / static_cast<double>(N - 1); }
    [[nodiscard]] double node(long i) const noexcept { return -L + static_cast<double>(i) * dy(); }  // 0-based
    [[nodiscard]] long steps() const;
    [[nodiscard]] std::string describe() const;
};

/// Implicit operator of one time step, rows 0-based. Row 0 and row N-1 are the
/// Neumann rows (1/dy, -1/dy); interior rows
///   sub = -(dt/2)(1/dy^2 + b/dy), diag = 1 + dt/dy^2, super = -(dt/2)(1/dy^2 - b/dy)
/// with b(y) = y + a_n'(y). sub[0] and super[N-1] are unused and 0.
struct TridiagonalOperator {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }
};

[[nodiscard]] TridiagonalOperator build_operator(const Grid1D& grid, PenalizationLevel n);

/// Thomas algorithm for op * x = rhs. Throws DomainError naming the (0-based) row
/// of a zero pivot.
[[nodiscard]] std::vector<double> solve_tridiagonal(const TridiagonalOperator& op, std::span<const double> rhs);

/// One implicit step: rhs_i = dt G_i + W_prev_i on interior rows, 0 on both
/// boundary rows.
[[nodiscard]] std::vector<double> step_w(const TridiagonalOperator& op, std::span<const double> w_prev,
                                         std::span<const double> g_values, double dt);

/// Centered difference (W_{i+1} - W_{i-1}) / (2 dy) on interior nodes, 0 on the ends.
[[nodiscard]] std::vector<double> centered_difference(std::span<const double> w, double dy);

/// Log-spaced times from dt to T (`per_decade` per decade, rounded to whole steps),
/// plus enough equally spaced times to put at least `tail` checkpoints in
/// [T/2, T], plus T itself. Sorted, unique, all multiples of dt.
[[nodiscard]] std::vector<double> default_checkpoints(const Grid1D& grid, int per_decade = 20, int tail = 20);

struct PdeSolution {
    Grid1D grid;
    long n = 0;
    std::string observable;
    std::vector<double> times;               ///< stored checkpoint times, times[0] = 0
    std::vector<std::vector<double>> w;      ///< W at each stored time
    std::vector<std::vector<double>> v;      ///< V at each stored time, empty if not solved
    std::vector<double> w_before_last;       ///< W one step before the final time

    /// Value at y = 0 of a field, linear interpolation between nodes.
    [[nodiscard]] static double at_origin(const Grid1D& grid, std::span<const double> field);
    [[nodiscard]] std::vector<double> w0() const;
    [[nodiscard]] std::vector<double> v0() const;
};

/// Marches W from 0 to T and stores it at `checkpoints` (default_checkpoints when
/// empty; each must be a multiple of dt in (0, T]).
[[nodiscard]] PdeSolution solve_w(const Grid1D& grid, PenalizationLevel n, const Observable& g,
                                  std::vector<double> checkpoints = {});

/// Marches W and V together; the V source at step k is (D W^k)_i^2.
[[nodiscard]] PdeSolution solve_v(const Grid1D& grid, PenalizationLevel n, const Observable& g,
                                  std::vector<double> checkpoints = {});

struct GammaEstimate {
    double gamma_squared = 0.0;
    double intercept = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double residual = 0.0;  ///< root mean square of the fit residuals
    long points = 0;
    std::string grid;

    [[nodiscard]] double gamma() const;
};

/// Least-squares slope of V(0, tau) over tau in [window T, T]. Throws
/// ContractViolation when fewer than 10 checkpoints fall in the window and
/// DomainError if the slope is negative beyond round-off.
[[nodiscard]] GammaEstimate gamma_from_v(const PdeSolution& solution, double window = 0.5);
[[nodiscard]] GammaEstimate gamma_from_series(std::span<const double> taus, std::span<const double> v0,
                                              double window_lo, double window_hi);

/// (W^K - W^{K-1}) / dt at y = 0: the long-run rate of the mean functional, which
/// tends to the stationary mean of g.
[[nodiscard]] double stationary_mean(const Grid1D& grid, PenalizationLevel n, const Observable& g);
[[nodiscard]] double stationary_mean(const PdeSolution& solution);

}  // namespace penosc
