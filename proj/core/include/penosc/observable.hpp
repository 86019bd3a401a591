#pragma once

#include <functional>
#include <string>

#include "penosc/state.hpp"

namespace penosc {

/// Scalar observable g of the velocity component y.
class Observable {
public:
    static Observable identity();
    static Observable square();
    /// 1 on [a, b], 0 elsewhere.
    static Observable indicator(double a, double b);
    static Observable constant(double c);
    static Observable custom(std::string name, std::function<double(double)> fn);

    /// Parses "identity", "square", "indicator:a,b" or "constant:c".
    static Observable parse(const std::string& text);

    [[nodiscard]] double operator()(double y) const {
        switch (kind_) {
            case Kind::Identity: return y;
            case Kind::Square: return y * y;
            case Kind::Indicator: return (y >= a_ && y <= b_) ? 1.0 : 0.0;
            case Kind::Constant: return a_;
            case Kind::Custom: break;
        }
        return fn_(y);
    }

    [[nodiscard]] double operator()(const State& z) const { return (*this)(z.y()); }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    enum class Kind { Identity, Square, Indicator, Constant, Custom };

    Observable(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    double a_ = 0.0;
    double b_ = 0.0;
    std::function<double(double)> fn_;
};

}  // namespace penosc
