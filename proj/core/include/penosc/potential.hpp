#pragma once

#include <functional>
#include <span>
#include <string>

#include "penosc/assumptions.hpp"

namespace penosc {

/// Declared constants of the confining-potential assumptions:
///   |U'(x) - U'(y)| <= kappa |x - y|,  U(x) >= lambda1 x^2 - beta1,
///   x U'(x) >= lambda2 U(x) - beta2,   U >= 0.
struct PotentialConstants {
    double kappa = 0.0;
    double lambda1 = 0.0;
    double beta1 = 0.0;
    double lambda2 = 0.0;
    double beta2 = 0.0;

    /// lambda3 = lambda1 lambda2 / (1 + lambda1)
    [[nodiscard]] double lambda3() const noexcept { return lambda1 * lambda2 / (1.0 + lambda1); }
    /// beta3 = beta2 + lambda2 beta1 / (1 + lambda1)
    [[nodiscard]] double beta3() const noexcept { return beta2 + lambda2 * beta1 / (1.0 + lambda1); }
};

/// Potential U with its derivative. Built-in shapes dispatch without std::function
/// so the simulation inner loop stays cheap.
class Potential {
public:
    using Fn = std::function<double(double)>;

    /// U == 0. lambda1 = 0, so the quadratic lower bound cannot hold.
    static Potential zero();
    /// U(x) = k x^2 / 2 with kappa = k, lambda1 = k/2, beta1 = 0, lambda2 = 2, beta2 = 0.
    static Potential quadratic(double stiffness);
    static Potential custom(std::string name, Fn value, Fn derivative, PotentialConstants constants);

    [[nodiscard]] double value(double x) const {
        switch (shape_) {
            case Shape::Zero: return 0.0;
            case Shape::Quadratic: return 0.5 * stiffness_ * x * x;
            case Shape::Custom: break;
        }
        return value_(x);
    }

    [[nodiscard]] double derivative(double x) const {
        switch (shape_) {
            case Shape::Zero: return 0.0;
            case Shape::Quadratic: return stiffness_ * x;
            case Shape::Custom: break;
        }
        return derivative_(x);
    }

    [[nodiscard]] const PotentialConstants& constants() const noexcept { return constants_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] bool is_zero() const noexcept { return shape_ == Shape::Zero; }
    [[nodiscard]] bool is_quadratic() const noexcept { return shape_ == Shape::Quadratic; }
    [[nodiscard]] double stiffness() const noexcept { return stiffness_; }

private:
    enum class Shape { Zero, Quadratic, Custom };

    Potential() = default;

    Shape shape_ = Shape::Zero;
    double stiffness_ = 0.0;
    Fn value_;
    Fn derivative_;
    PotentialConstants constants_;
    std::string name_ = "zero";
};

/// Samples the potential assumptions (Lipschitz derivative, quadratic lower bound,
/// x U' growth, positivity, and the derived lambda3/beta3 bound) on `grid`.
/// The Lipschitz check visits every pair of grid points.
[[nodiscard]] AssumptionReport check_potential_assumptions(const Potential& u, std::span<const double> grid);

/// beta4 = max(beta3, max_{|z| <= 1} |U'(z)|), the inner max taken over `samples`
/// equally spaced points of [-1, 1].
[[nodiscard]] double beta4(const Potential& u, int samples = 10000);

}  // namespace penosc
