#pragma once

#include <functional>

#include "penosc/noise.hpp"

namespace penosc {

/// rho(eta) = exp(-beta v(eta)) / Z_beta for a confining drift potential v known
/// through v'. v is rebuilt by composite Simpson quadrature with v(0) = 0, and Z_beta
/// by composite Simpson quadrature over [-window, window].
class StationaryDensity {
public:
    StationaryDensity(std::function<double(double)> v_prime, double beta, double window, int intervals);

    [[nodiscard]] double operator()(double eta) const;
    [[nodiscard]] double potential(double eta) const;
    [[nodiscard]] double normalizer() const noexcept { return normalizer_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double window() const noexcept { return window_; }

private:
    std::function<double(double)> v_prime_;
    double beta_;
    double window_;
    double normalizer_ = 0.0;
};

/// Throws DomainError when exp(-beta v) does not decay to below 1e-10 of its peak
/// at the window edges (the integral is not captured by the truncation).
[[nodiscard]] StationaryDensity ou_stationary_density(std::function<double(double)> v_prime, double beta,
                                                      double window = 10.0, int intervals = 4000);
[[nodiscard]] StationaryDensity ou_stationary_density(const OverdampedNoise& noise, double window = 10.0,
                                                      int intervals = 4000);

}  // namespace penosc
