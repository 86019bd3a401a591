#include "penosc/stationary_density.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "penosc/error.hpp"

namespace penosc {

namespace {

// Simpson on [a, b] with `m` (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

}  // namespace

StationaryDensity::StationaryDensity(std::function<double(double)> v_prime, double beta, double window,
                                     int intervals)
    : v_prime_(std::move(v_prime)), beta_(beta), window_(window) {
    if (!v_prime_) {
        throw ContractViolation("stationary density needs v'");
    }
    if (!(beta > 0.0) || !(window > 0.0) || intervals < 2 || intervals % 2 != 0) {
        throw ContractViolation("stationary density needs beta > 0, window > 0 and an even interval count");
    }
    // v at the nodes, marching outward from v(0) = 0 one Simpson panel per node.
    const int half = intervals / 2;
    const double h = window / half;
    std::vector<double> v(intervals + 1, 0.0);
    for (int j = 1; j <= half; ++j) {
        const double a = (j - 1) * h;
        v[half + j] = v[half + j - 1] + simpson(v_prime_, a, a + h, 2);
        v[half - j] = v[half - j + 1] + simpson(v_prime_, -a, -a - h, 2);
    }
    const double vmin = *std::min_element(v.begin(), v.end());
    const double edge = std::max(std::exp(-beta * (v.front() - vmin)), std::exp(-beta * (v.back() - vmin)));
    if (!std::isfinite(vmin) || !(edge < 1e-10)) {
        throw DomainError("exp(-beta v) does not decay on [-" + std::to_string(window) + ", " +
                          std::to_string(window) + "]; v is not confining on the truncation window");
    }
    double s = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * std::exp(-beta * v[i]);
    }
    normalizer_ = s * h / 3.0;
    if (!std::isfinite(normalizer_) || !(normalizer_ > 0.0)) {
        throw DomainError("normalizing constant is not finite");
    }
}

double StationaryDensity::potential(double eta) const {
    if (eta == 0.0) {
        return 0.0;
    }
    return simpson(v_prime_, 0.0, eta, 64);
}

double StationaryDensity::operator()(double eta) const {
    return std::exp(-beta_ * potential(eta)) / normalizer_;
}

StationaryDensity ou_stationary_density(std::function<double(double)> v_prime, double beta, double window,
                                        int intervals) {
    return StationaryDensity(std::move(v_prime), beta, window, intervals);
}

StationaryDensity ou_stationary_density(const OverdampedNoise& noise, double window, int intervals) {
    return StationaryDensity(noise.v_prime, noise.beta, window, intervals);
}

}  // namespace penosc
