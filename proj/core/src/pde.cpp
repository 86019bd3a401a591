#include "penosc/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "penosc/csv.hpp"
#include "penosc/error.hpp"

namespace penosc {

void Grid1D::validate() const {
    if (!(L > 0.0) || N < 3 || !(dt > 0.0) || !(T > 0.0)) {
        throw ContractViolation("grid needs L > 0, N >= 3, dt > 0 and T > 0");
    }
    const double ratio = T / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1.0) {
        throw ContractViolation("T / dt must be a positive integer");
    }
}

long Grid1D::steps() const { return std::lround(T / dt); }

std::string Grid1D::describe() const {
    std::ostringstream out;
    out << "L=" << format_double(L) << " N=" << N << " dt=" << format_double(dt) << " T=" << format_double(T);
    return out.str();
}

TridiagonalOperator build_operator(const Grid1D& grid, PenalizationLevel n) {
    grid.validate();
    const auto N = static_cast<std::size_t>(grid.N);
    const double dy = grid.dy();
    const double dt = grid.dt;
    TridiagonalOperator op;
    op.sub.assign(N, 0.0);
    op.diag.assign(N, 0.0);
    op.super.assign(N, 0.0);
    op.diag[0] = 1.0 / dy;
    op.super[0] = -1.0 / dy;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double y = grid.node(static_cast<long>(i));
        const double b = y + a_n_prime(y, n);
        op.sub[i] = -0.5 * dt * (1.0 / (dy * dy) + b / dy);
        op.diag[i] = 1.0 + dt / (dy * dy);
        op.super[i] = -0.5 * dt * (1.0 / (dy * dy) - b / dy);
    }
    op.sub[N - 1] = 1.0 / dy;
    op.diag[N - 1] = -1.0 / dy;
    return op;
}

namespace {

// Forward-elimination coefficients of the Thomas algorithm, reusable across right-hand sides.
struct Factor {
    std::vector<double> sub;
    std::vector<double> pivot;
    std::vector<double> upper;  // super_i / pivot_i

    explicit Factor(const TridiagonalOperator& op) : sub(op.sub), pivot(op.size()), upper(op.size()) {
        const std::size_t n = op.size();
        if (n == 0 || op.sub.size() != n || op.super.size() != n) {
            throw ContractViolation("malformed tridiagonal operator");
        }
        for (std::size_t i = 0; i < n; ++i) {
            pivot[i] = i == 0 ? op.diag[0] : op.diag[i] - op.sub[i] * upper[i - 1];
            if (pivot[i] == 0.0 || !std::isfinite(pivot[i])) {
                throw DomainError("zero pivot in tridiagonal elimination at row " + std::to_string(i));
            }
            upper[i] = op.super[i] / pivot[i];
        }
    }

    void solve(std::span<const double> rhs, std::vector<double>& x) const {
        const std::size_t n = pivot.size();
        if (rhs.size() != n) {
            throw ContractViolation("right-hand side length does not match the operator");
        }
        x.resize(n);
        x[0] = rhs[0] / pivot[0];
        for (std::size_t i = 1; i < n; ++i) {
            x[i] = (rhs[i] - sub[i] * x[i - 1]) / pivot[i];
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            x[i] -= upper[i] * x[i + 1];
        }
    }
};

void fill_rhs(std::span<const double> prev, std::span<const double> source, double dt, std::vector<double>& rhs) {
    const std::size_t n = prev.size();
    if (source.size() != n) {
        throw ContractViolation("source and field lengths differ");
    }
    rhs.resize(n);
    rhs[0] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        rhs[i] = dt * source[i] + prev[i];
    }
    rhs[n - 1] = 0.0;
}

}  // namespace

std::vector<double> solve_tridiagonal(const TridiagonalOperator& op, std::span<const double> rhs) {
    std::vector<double> x;
    Factor(op).solve(rhs, x);
    return x;
}

std::vector<double> step_w(const TridiagonalOperator& op, std::span<const double> w_prev,
                           std::span<const double> g_values, double dt) {
    if (w_prev.size() != op.size()) {
        throw ContractViolation("field length does not match the operator");
    }
    std::vector<double> rhs;
    fill_rhs(w_prev, g_values, dt, rhs);
    return solve_tridiagonal(op, rhs);
}

std::vector<double> centered_difference(std::span<const double> w, double dy) {
    std::vector<double> d(w.size(), 0.0);
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        d[i] = (w[i + 1] - w[i - 1]) / (2.0 * dy);
    }
    return d;
}

std::vector<double> default_checkpoints(const Grid1D& grid, int per_decade, int tail) {
    grid.validate();
    const long K = grid.steps();
    std::vector<long> ks;
    const double decades = std::log10(static_cast<double>(K));
    const int count = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
    for (int j = 0; j <= count; ++j) {
        ks.push_back(std::clamp(std::lround(std::pow(10.0, decades * j / count)), 1L, K));
    }
    for (int j = 0; j <= tail; ++j) {
        ks.push_back(std::clamp(K / 2 + std::lround(static_cast<double>(K - K / 2) * j / tail), 1L, K));
    }
    ks.push_back(K);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<double> out;
    out.reserve(ks.size());
    for (long k : ks) {
        out.push_back(static_cast<double>(k) * grid.dt);
    }
    return out;
}

double PdeSolution::at_origin(const Grid1D& grid, std::span<const double> field) {
    const double s = grid.L / grid.dy();
    const auto i0 = static_cast<std::size_t>(std::floor(s));
    const double frac = s - static_cast<double>(i0);
    if (frac < 1e-12 || i0 + 1 >= field.size()) {
        return field[std::min(i0, field.size() - 1)];
    }
    return (1.0 - frac) * field[i0] + frac * field[i0 + 1];
}

std::vector<double> PdeSolution::w0() const {
    std::vector<double> out;
    for (const auto& f : w) {
        out.push_back(at_origin(grid, f));
    }
    return out;
}

std::vector<double> PdeSolution::v0() const {
    std::vector<double> out;
    for (const auto& f : v) {
        out.push_back(at_origin(grid, f));
    }
    return out;
}

namespace {

PdeSolution march_fields(const Grid1D& grid, PenalizationLevel n, const Observable& g,
                         std::vector<double> checkpoints, bool with_v) {
    grid.validate();
    if (checkpoints.empty()) {
        checkpoints = default_checkpoints(grid);
    }
    const long K = grid.steps();
    std::vector<long> ks;
    for (double t : checkpoints) {
        const double r = t / grid.dt;
        const long k = std::lround(r);
        if (k < 1 || k > K || std::abs(r - static_cast<double>(k)) > 1e-6) {
            throw ContractViolation("checkpoint " + format_double(t) + " is not a multiple of dt in (0, T]");
        }
        ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    const auto N = static_cast<std::size_t>(grid.N);
    const Factor factor(build_operator(grid, n));
    std::vector<double> gv(N);
    for (std::size_t i = 0; i < N; ++i) {
        gv[i] = g(grid.node(static_cast<long>(i)));
    }

    PdeSolution sol;
    sol.grid = grid;
    sol.n = n.value();
    sol.observable = g.name();
    sol.times.push_back(0.0);
    sol.w.emplace_back(N, 0.0);
    if (with_v) {
        sol.v.emplace_back(N, 0.0);
    }

    std::vector<double> w(N, 0.0);
    std::vector<double> v(N, 0.0);
    std::vector<double> rhs(N);
    std::vector<double> next(N);
    std::vector<double> src(N);
    const double dy = grid.dy();
    std::size_t next_cp = 0;
    for (long k = 1; k <= K; ++k) {
        if (k == K) {
            sol.w_before_last = w;
        }
        fill_rhs(w, gv, grid.dt, rhs);
        factor.solve(rhs, next);
        w.swap(next);
        if (with_v) {
            for (std::size_t i = 1; i + 1 < N; ++i) {
                const double d = (w[i + 1] - w[i - 1]) / (2.0 * dy);
                src[i] = d * d;
            }
            fill_rhs(v, src, grid.dt, rhs);
            factor.solve(rhs, next);
            v.swap(next);
        }
        if (next_cp < ks.size() && ks[next_cp] == k) {
            sol.times.push_back(static_cast<double>(k) * grid.dt);
            sol.w.push_back(w);
            if (with_v) {
                sol.v.push_back(v);
            }
            ++next_cp;
        }
    }
    return sol;
}

}  // namespace

PdeSolution solve_w(const Grid1D& grid, PenalizationLevel n, const Observable& g, std::vector<double> checkpoints) {
    return march_fields(grid, n, g, std::move(checkpoints), false);
}

PdeSolution solve_v(const Grid1D& grid, PenalizationLevel n, const Observable& g, std::vector<double> checkpoints) {
    return march_fields(grid, n, g, std::move(checkpoints), true);
}

double GammaEstimate::gamma() const { return std::sqrt(gamma_squared); }

GammaEstimate gamma_from_series(std::span<const double> taus, std::span<const double> v0, double window_lo,
                                double window_hi) {
    if (taus.size() != v0.size()) {
        throw ContractViolation("time and value series differ in length");
    }
    std::vector<double> t;
    std::vector<double> v;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (taus[i] >= window_lo * (1.0 - 1e-12) && taus[i] <= window_hi * (1.0 + 1e-12)) {
            t.push_back(taus[i]);
            v.push_back(v0[i]);
        }
    }
    if (t.size() < 10) {
        throw ContractViolation("fit window [" + format_double(window_lo) + ", " + format_double(window_hi) +
                                "] holds " + std::to_string(t.size()) + " checkpoints, need at least 10");
    }
    const double m = static_cast<double>(t.size());
    double tm = 0.0;
    double vm = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        tm += t[i];
        vm += v[i];
    }
    tm /= m;
    vm /= m;
    double stt = 0.0;
    double stv = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - tm) * (t[i] - tm);
        stv += (t[i] - tm) * (v[i] - vm);
    }
    if (stt <= 0.0) {
        throw ContractViolation("fit window has no spread in time");
    }
    GammaEstimate est;
    double slope = stv / stt;
    if (slope < 0.0) {
        if (slope < -1e-12 * (1.0 + std::abs(vm))) {
            throw DomainError("variance functional decreases over the fit window");
        }
        slope = 0.0;
    }
    est.gamma_squared = slope;
    est.intercept = vm - slope * tm;
    est.window_lo = window_lo;
    est.window_hi = window_hi;
    est.points = static_cast<long>(t.size());
    double rss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = v[i] - (est.intercept + slope * t[i]);
        rss += r * r;
    }
    est.residual = std::sqrt(rss / m);
    return est;
}

GammaEstimate gamma_from_v(const PdeSolution& solution, double window) {
    if (solution.v.empty()) {
        throw ContractViolation("solution has no V field; run solve_v");
    }
    if (!(window > 0.0 && window < 1.0)) {
        throw ContractViolation("window fraction must lie in (0, 1)");
    }
    const double T = solution.times.back();
    GammaEstimate est = gamma_from_series(solution.times, solution.v0(), window * T, T);
    est.grid = solution.grid.describe();
    return est;
}

double stationary_mean(const PdeSolution& solution) {
    if (solution.w_before_last.empty()) {
        throw ContractViolation("solution does not hold the step before the final time");
    }
    if (std::abs(solution.times.back() - solution.grid.T) > 1e-9 * solution.grid.T) {
        throw ContractViolation("solution was not stored at the final time");
    }
    const double last = PdeSolution::at_origin(solution.grid, solution.w.back());
    const double prev = PdeSolution::at_origin(solution.grid, solution.w_before_last);
    return (last - prev) / solution.grid.dt;
}

double stationary_mean(const Grid1D& grid, PenalizationLevel n, const Observable& g) {
    return stationary_mean(solve_w(grid, n, g, {grid.T}));
}

}  // namespace penosc
