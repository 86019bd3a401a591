#include "penosc/potential.hpp"

#include <algorithm>
#include <cmath>

#include "penosc/error.hpp"

namespace penosc {

Potential Potential::zero() {
    Potential u;
    u.shape_ = Shape::Zero;
    u.name_ = "zero";
    return u;
}

Potential Potential::quadratic(double stiffness) {
    if (!(stiffness > 0.0)) {
        throw ContractViolation("quadratic potential needs a positive stiffness");
    }
    Potential u;
    u.shape_ = Shape::Quadratic;
    u.stiffness_ = stiffness;
    u.constants_ = {stiffness, 0.5 * stiffness, 0.0, 2.0, 0.0};
    u.name_ = "quadratic";
    return u;
}

Potential Potential::custom(std::string name, Fn value, Fn derivative, PotentialConstants constants) {
    if (!value || !derivative) {
        throw ContractViolation("custom potential needs both U and U'");
    }
    Potential u;
    u.shape_ = Shape::Custom;
    u.value_ = std::move(value);
    u.derivative_ = std::move(derivative);
    u.constants_ = constants;
    u.name_ = std::move(name);
    return u;
}

AssumptionReport check_potential_assumptions(const Potential& u, std::span<const double> grid) {
    const auto& c = u.constants();
    InequalityTally lipschitz("lipschitz");
    InequalityTally lower("quadratic-lower-bound");
    InequalityTally growth("xU'-growth");
    InequalityTally positive("nonnegative");
    InequalityTally derived("lambda3-beta3");

    std::vector<double> du(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double ux = u.value(x);
        du[i] = u.derivative(x);
        lower.record(c.lambda1 * x * x - c.beta1, ux, x);
        growth.record(c.lambda2 * ux - c.beta2, x * du[i], x);
        positive.record(0.0, ux, x);
        derived.record(c.lambda3() * (ux + x * x) - c.beta3(), x * du[i], x);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            lipschitz.record(std::abs(du[i] - du[j]), c.kappa * std::abs(grid[i] - grid[j]), grid[i]);
        }
    }
    return {{lipschitz.finish(), lower.finish(), growth.finish(), positive.finish(), derived.finish()}};
}

double beta4(const Potential& u, int samples) {
    if (samples < 2) {
        throw ContractViolation("beta4 needs at least two samples");
    }
    double m = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double z = -1.0 + 2.0 * i / (samples - 1);
        m = std::max(m, std::abs(u.derivative(z)));
    }
    return std::max(u.constants().beta3(), m);
}

}  // namespace penosc
