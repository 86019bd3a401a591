#pragma once

// Moreau-Yosida regularizations of the indicator of K = [-1, 1] and of |y|.

#include <cmath>
#include <string>

#include "penosc/error.hpp"

namespace penosc {

/// Sharpness n >= 1 of the penalized approximation.
class PenalizationLevel {
public:
    explicit PenalizationLevel(long n) : n_(n) {
        if (n < 1) {
            throw ContractViolation("penalization level must be >= 1, got " + std::to_string(n));
        }
    }

    [[nodiscard]] long value() const noexcept { return n_; }
    [[nodiscard]] double as_double() const noexcept { return static_cast<double>(n_); }

    friend bool operator==(PenalizationLevel, PenalizationLevel) = default;

private:
    long n_;
};

/// Projection onto K = [-1, 1].
[[nodiscard]] inline double proj_k(double x) noexcept {
    return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

/// chi_n(x) = (n/2) |x - proj_K(x)|^2
[[nodiscard]] inline double chi_n(double x, PenalizationLevel n) noexcept {
    const double d = x - proj_k(x);
    return 0.5 * n.as_double() * d * d;
}

/// chi_n'(x) = n (x - proj_K(x)); zero on K, including at x = +-1.
[[nodiscard]] inline double chi_n_prime(double x, PenalizationLevel n) noexcept {
    return n.as_double() * (x - proj_k(x));
}

/// Huber-type regularization of |y|: |y| - 1/(2n) when n|y| >= 1, else (n/2) y^2.
[[nodiscard]] inline double a_n(double y, PenalizationLevel n) noexcept {
    const double nn = n.as_double();
    const double ay = std::abs(y);
    return nn * ay >= 1.0 ? ay - 0.5 / nn : 0.5 * nn * y * y;
}

/// a_n'(y): sign(y) when n|y| >= 1, else n y. Both branches give +-1 at the kink.
[[nodiscard]] inline double a_n_prime(double y, PenalizationLevel n) noexcept {
    const double nn = n.as_double();
    if (nn * std::abs(y) >= 1.0) {
        return y > 0.0 ? 1.0 : -1.0;
    }
    return nn * y;
}

}  // namespace penosc
