#pragma once

// Reference computations written independently of the library, used as test oracles.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Dense Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b);

/// Which penalty sits where, written out from the model table.
enum class Model { ElastoPlastic, Friction, Obstacle };

struct Setup {
    Model model = Model::Friction;
    double n = 100.0;
    double cb = 1.0;
    double k = 1.0;  ///< U = k x^2 / 2
    int noise = 0;   ///< 0 white, 1 OU with theta, 2 Kanai-Tajimi (kt_k, kt_g, R = c eta zeta)
    double theta = 1.0;
    double kt_k = 1.0;
    double kt_g = 1.0;
    double kt_c = 0.0;
};

/// F_n(z) for z = (zeta, eta, y, x) truncated to dim entries.
std::vector<double> drift(const Setup& s, const std::vector<double>& z);

/// A psi(z) = (1/2) d^2 psi / dz_1^2 + F . grad psi by central differences with step h.
double fd_generator(const Setup& s, const std::function<double(const std::vector<double>&)>& psi,
                    const std::vector<double>& z, double h);

/// Integral of exp(-c (y^2/2 + U_n(x))) over a y-interval times an x-interval,
/// normalized by the integral over the plane; U_n = x^2/2 + (n/2) dist(x, [-1,1])^2.
struct GibbsObstacle {
    double c;
    double n;
    double y_mass(double lo, double hi) const;
    double x_mass(double lo, double hi) const;
};

/// gamma^2 of int y(Y_s) ds for dY = -(Y + a_n'(Y)) dt + dW, from the stationary
/// density m ~ exp(-y^2 - 2 a_n(y)) and the Poisson equation:
/// gamma^2 = int p^2 m with p(y) = 2 int_y^inf s m(s) ds / m(y).
double friction_gamma_squared(double n);

/// Stationary mean of g(Y) for the same velocity process.
double friction_stationary_mean(double n, const std::function<double(double)>& g);

/// Monte Carlo of P(max_{t<=T} |W_t| >= b) for several (b, T) pairs from one pass
/// over Brownian paths on a grid of step dt. Between grid points the running max and
/// min are drawn from the Brownian-bridge law, so `bridge` carries no
/// discrete-monitoring bias; `discrete` is the grid-only estimate.
struct WienerMaxQuery {
    double b;
    double T;
};

struct WienerMaxResult {
    std::vector<double> bridge;
    std::vector<double> discrete;
    long paths = 0;
};

WienerMaxResult wiener_max(const std::vector<WienerMaxQuery>& queries, double dt, long paths, std::uint64_t seed);

}  // namespace oracle
