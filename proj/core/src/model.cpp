#include "penosc/model.hpp"

#include <cmath>
#include <sstream>

#include "penosc/csv.hpp"

namespace penosc {

std::string model_key(ModelKind kind) {
    switch (kind) {
        case ModelKind::ElastoPlastic: return "epp";
        case ModelKind::Friction: return "fp";
        case ModelKind::Obstacle: return "op";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& key) {
    if (key == "epp") {
        return ModelKind::ElastoPlastic;
    }
    if (key == "fp") {
        return ModelKind::Friction;
    }
    if (key == "op") {
        return ModelKind::Obstacle;
    }
    throw UsageError("unknown model '" + key + "' (expected epp, fp or op)");
}

std::string ModelSpec::describe() const {
    std::ostringstream out;
    out << "model=" << model_key(kind) << '\n'
        << "n=" << n.value() << '\n'
        << "cb=" << format_double(damping) << '\n'
        << "potential=" << potential.name() << '\n';
    if (potential.is_quadratic()) {
        out << "k=" << format_double(potential.stiffness()) << '\n';
    }
    out << "noise=" << noise_name(noise) << '\n';
    if (const auto* od = std::get_if<OverdampedNoise>(&noise)) {
        out << "theta_v=" << format_double(od->theta) << '\n'
            << "beta=" << format_double(od->beta) << '\n'
            << "r=" << format_double(od->r) << '\n';
    } else if (const auto* hn = std::get_if<HamiltonianNoise>(&noise)) {
        out << "kt_k=" << format_double(hn->kt_stiffness) << '\n'
            << "kt_gamma0=" << format_double(hn->kt_damping) << '\n'
            << "delta_tilde=" << format_double(hn->delta_tilde) << '\n'
            << "bound_m=" << format_double(hn->bound_m) << '\n';
    }
    return out.str();
}

std::uint64_t ModelSpec::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : describe()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool is_reduced_friction(const ModelSpec& spec) noexcept {
    return spec.kind == ModelKind::Friction && spec.dimension() == 2 && spec.potential.is_zero();
}

State drift(const ModelSpec& spec, const State& z) {
    const int d = spec.dimension();
    if (z.dim() != d) {
        throw ContractViolation("state has dimension " + std::to_string(z.dim()) + ", model needs " +
                                std::to_string(d));
    }
    const double y = z.y();
    const double x = z.x();
    State f(d);
    double forcing = 0.0;
    if (d == 3) {
        const auto& od = std::get<OverdampedNoise>(spec.noise);
        forcing = z.eta();
        f.eta() = -od.v_prime(z.eta());
    } else if (d == 4) {
        const auto& hn = std::get<HamiltonianNoise>(spec.noise);
        forcing = z.eta();
        f.zeta() = hn.b1(z.eta(), z.zeta());
        f.eta() = hn.b2(z.eta(), z.zeta());
    }
    f.y() = -spec.effective_potential_prime(x) - spec.damping * y - spec.penalty_y(y) + forcing;
    f.x() = y - spec.penalty_x(x);
    return f;
}

PenaltyTerms penalty_terms(const ModelSpec& spec) {
    return {[spec](double y) { return spec.penalty_y(y); }, [spec](double x) { return spec.penalty_x(x); }};
}

PenaltyReport check_hpx_hpy(const PenaltyTerms& terms, PenalizationLevel n, std::span<const double> grid) {
    PenaltyReport report;
    report.min_slack_y = 1.0;
    report.min_slack_x_lower = INFINITY;
    report.min_slack_x_upper = INFINITY;
    const double nn = n.as_double();
    constexpr double tol = 1e-12;
    for (double s : grid) {
        const double fy = terms.f_y(s);
        report.max_abs_f_y = std::max(report.max_abs_f_y, std::abs(fy));
        report.min_slack_y = std::min(report.min_slack_y, 1.0 - std::abs(fy));

        const double sgn = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
        const double fx = sgn * terms.f_x(s);
        const double upper = nn * std::abs(s) - fx;
        report.min_slack_x_lower = std::min(report.min_slack_x_lower, fx);
        report.min_slack_x_upper = std::min(report.min_slack_x_upper, upper);

        const double scale = tol * (1.0 + nn * std::abs(s));
        if (std::abs(fy) > 1.0 + tol || fx < -scale || upper < -scale) {
            report.violations.push_back(s);
        }
    }
    return report;
}

PenaltyReport check_hpx_hpy(const ModelSpec& spec, std::span<const double> grid) {
    return check_hpx_hpy(penalty_terms(spec), spec.n, grid);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    if (count > 1) {
        out.back() = hi;
    }
    return out;
}

}  // namespace penosc
