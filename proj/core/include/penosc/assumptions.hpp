#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace penosc {

/// Outcome of one sampled inequality: `min_slack` is min over samples of (rhs - lhs)
/// for an inequality lhs <= rhs, so a negative value means a violation.
struct AssumptionCheck {
    std::string name;
    bool holds = true;
    double min_slack = 0.0;
    double worst_point = 0.0;
    std::size_t violations = 0;
};

struct AssumptionReport {
    std::vector<AssumptionCheck> checks;

    [[nodiscard]] bool ok() const noexcept {
        for (const auto& c : checks) {
            if (!c.holds) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] const AssumptionCheck* find(const std::string& name) const noexcept {
        for (const auto& c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
};

/// Accumulates samples of an inequality into an AssumptionCheck.
class InequalityTally {
public:
    explicit InequalityTally(std::string name, double tolerance = 1e-12)
        : tolerance_(tolerance) {
        check_.name = std::move(name);
        check_.min_slack = std::numeric_limits<double>::infinity();
    }

    /// Records lhs <= rhs at `point`; the tolerance is relative to the operands.
    void record(double lhs, double rhs, double point) {
        const double slack = rhs - lhs;
        if (slack < check_.min_slack) {
            check_.min_slack = slack;
            check_.worst_point = point;
        }
        if (slack < -tolerance_ * (1.0 + std::abs(lhs) + std::abs(rhs))) {
            check_.holds = false;
            ++check_.violations;
        }
    }

    [[nodiscard]] AssumptionCheck finish() const { return check_; }

private:
    AssumptionCheck check_;
    double tolerance_;
};

}  // namespace penosc
