#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string>

#include "penosc/error.hpp"

namespace penosc {

/// Ordered state (zeta, eta, y, x) truncated to its last `dim` entries:
///   d = 2 -> (y, x), d = 3 -> (eta, y, x), d = 4 -> (zeta, eta, y, x).
/// Component 0 always carries the noise.
class State {
public:
    static constexpr int kMaxDim = 4;

    State() = default;

    explicit State(int dim) : dim_(dim) {
        if (dim < 2 || dim > kMaxDim) {
            throw ContractViolation("state dimension must be 2, 3 or 4, got " + std::to_string(dim));
        }
    }

    State(std::initializer_list<double> values) : State(static_cast<int>(values.size())) {
        int i = 0;
        for (double v : values) {
            c_[i++] = v;
        }
    }

    [[nodiscard]] int dim() const noexcept { return dim_; }

    [[nodiscard]] double operator[](int i) const noexcept { return c_[i]; }
    [[nodiscard]] double& operator[](int i) noexcept { return c_[i]; }

    [[nodiscard]] double y() const noexcept { return c_[dim_ - 2]; }
    [[nodiscard]] double x() const noexcept { return c_[dim_ - 1]; }
    [[nodiscard]] double eta() const noexcept { return c_[dim_ - 3]; }
    [[nodiscard]] double zeta() const noexcept { return c_[0]; }

    double& y() noexcept { return c_[dim_ - 2]; }
    double& x() noexcept { return c_[dim_ - 1]; }
    double& eta() noexcept { return c_[dim_ - 3]; }
    double& zeta() noexcept { return c_[0]; }

    [[nodiscard]] std::span<const double> components() const noexcept {
        return {c_.data(), static_cast<std::size_t>(dim_)};
    }

    friend bool operator==(const State& a, const State& b) noexcept {
        if (a.dim_ != b.dim_) {
            return false;
        }
        for (int i = 0; i < a.dim_; ++i) {
            if (a.c_[i] != b.c_[i]) {
                return false;
            }
        }
        return true;
    }

private:
    std::array<double, kMaxDim> c_{};
    int dim_ = 2;
};

/// Column names of a state of dimension `dim`, e.g. {"eta", "y", "x"}.
[[nodiscard]] inline std::span<const char* const> component_names(int dim) {
    static constexpr std::array<const char*, 4> names{"zeta", "eta", "y", "x"};
    if (dim < 2 || dim > State::kMaxDim) {
        throw ContractViolation("state dimension must be 2, 3 or 4");
    }
    return std::span<const char* const>(names).subspan(4 - dim);
}

}  // namespace penosc
