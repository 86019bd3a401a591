#include "penosc/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "penosc/csv.hpp"
#include "penosc/parallel.hpp"

namespace penosc {

LyapunovConstants select_constants(const ModelSpec& spec, double margin) {
    if (!(margin >= 1.0)) {
        throw ContractViolation("margin must be >= 1");
    }
    const PotentialConstants& pc = spec.potential.constants();
    LyapunovConstants c;
    c.dim = spec.dimension();
    c.margin = margin;
    c.n = spec.n.as_double();
    c.damping = spec.damping;
    c.lambda1 = pc.lambda1;
    c.beta1 = pc.beta1;
    c.lambda3 = pc.lambda3();
    c.beta3 = pc.beta3();
    if (!(c.lambda1 > 0.0) || !(c.lambda3 > 0.0) || !(spec.damping > 0.0)) {
        throw DomainError("Lyapunov constants need lambda1 > 0, lambda3 > 0 and C_b > 0 (potential '" +
                          spec.potential.name() + "')");
    }
    c.beta4 = beta4(spec.potential);

    const double cb = spec.damping;
    const double tail = cb + c.n;
    c.delta_floor = std::max(1.0 / std::sqrt(c.lambda1), (2.0 / cb) * (2.0 + 4.0 * tail * tail / (3.0 * c.lambda3)));
    c.delta = margin * c.delta_floor;
    c.c_v = 1.0 + c.delta * c.beta1;

    const double bracket = c.delta / cb + 2.0 / (3.0 * c.lambda3);
    double rate = std::numeric_limits<double>::infinity();
    if (const auto* od = std::get_if<OverdampedNoise>(&spec.noise)) {
        if (!(od->r > 0.0)) {
            throw DomainError("overdamped noise needs r > 0");
        }
        c.r = od->r;
        c.xi_floor = (8.0 / c.r) * bracket;
        c.xi = margin * c.xi_floor;
        rate = c.r;
    } else if (const auto* hn = std::get_if<HamiltonianNoise>(&spec.noise)) {
        if (!(hn->delta_tilde > 0.0)) {
            throw DomainError("Hamiltonian noise needs delta_tilde > 0");
        }
        c.delta_tilde = hn->delta_tilde;
        c.bound_m = hn->bound_m;
        c.k_floor = (4.0 / (c.delta_tilde * c.delta_tilde)) * bracket;
        c.k = margin * c.k_floor;
        rate = c.delta_tilde;
    }
    c.epsilon_ceiling = std::min({c.lambda3 / c.delta, cb, rate, 1.0});
    c.epsilon = c.epsilon_ceiling / (2.0 * margin);

    c.gamma_tilde = 0.75 * c.lambda3;
    const double g = c.delta * c.beta4 * c.n;
    c.gamma = c.beta3 + g * g / c.lambda3;

    c.k2 = c.c_v + c.gamma + 0.5 * c.delta;
    c.k2y = 0.25 * cb * c.delta;
    c.k2x = 0.5 * c.gamma_tilde;

    c.k3 = c.c_v + c.gamma + 0.5 * c.xi;
    c.k3eta = 0.25 * c.xi * c.r;
    c.k3y = 0.5 * c.k2y;
    c.k3x = 0.5 * c.k2x;

    c.k4 = c.c_v + c.gamma + c.bound_m * (1.0 + c.k * c.delta_tilde);
    c.k4zeta = c.k * c.delta_tilde * c.delta_tilde;
    c.k4eta = 0.5 * c.k4zeta;
    c.k4y = 0.5 * c.k2y;
    c.k4x = 0.5 * c.k2x;

    for (double v : {c.delta, c.c_v, c.gamma, c.epsilon, c.k2, c.k3, c.k4}) {
        if (!std::isfinite(v)) {
            throw DomainError("non-finite Lyapunov constant");
        }
    }
    return c;
}

namespace {

void check_dim(const ModelSpec& spec, const State& z) {
    if (z.dim() != spec.dimension()) {
        throw ContractViolation("state has dimension " + std::to_string(z.dim()) + ", model needs " +
                                std::to_string(spec.dimension()));
    }
}

const HamiltonianNoise& hamiltonian_of(const ModelSpec& spec) {
    const auto& hn = std::get<HamiltonianNoise>(spec.noise);
    if (!hn.hamiltonian.complete() || !hn.correction.complete() || !hn.dissipation) {
        throw ContractViolation("Hamiltonian noise needs H, R and all their partial derivatives");
    }
    return hn;
}

}  // namespace

double eval_V(const LyapunovConstants& c, const ModelSpec& spec, const State& z) {
    check_dim(spec, z);
    const double y = z.y();
    const double x = z.x();
    double v = c.delta * (0.5 * y * y + spec.effective_potential(x)) + x * y + c.c_v;
    if (z.dim() == 3) {
        v += 0.5 * c.xi * z.eta() * z.eta();
    } else if (z.dim() == 4) {
        const auto& hn = hamiltonian_of(spec);
        v += c.k * (hn.energy(z.eta(), z.zeta()) + c.bound_m);
    }
    return v;
}

double eval_AV_plus_epsV(const LyapunovConstants& c, const ModelSpec& spec, const State& z) {
    check_dim(spec, z);
    const State f = drift(spec, z);
    const double y = z.y();
    const double x = z.x();
    double second = c.delta;
    double flow = f.y() * (c.delta * y + x) + f.x() * (c.delta * spec.effective_potential_prime(x) + y);
    if (z.dim() == 3) {
        second = c.xi;
        flow += f.eta() * c.xi * z.eta();
    } else if (z.dim() == 4) {
        const auto& hn = hamiltonian_of(spec);
        const double eta = z.eta();
        const double zeta = z.zeta();
        second = c.k * (hn.hamiltonian.d_zeta_zeta(eta, zeta) + hn.correction.d_zeta_zeta(eta, zeta));
        flow += f.zeta() * c.k * (hn.hamiltonian.d_zeta(eta, zeta) + hn.correction.d_zeta(eta, zeta));
        flow += f.eta() * c.k * (hn.hamiltonian.d_eta(eta, zeta) + hn.correction.d_eta(eta, zeta));
    }
    return 0.5 * second + flow + c.epsilon * eval_V(c, spec, z);
}

double s1(const LyapunovConstants& c, const ModelSpec& spec, double x) {
    return c.delta * c.epsilon * spec.effective_potential(x) -
           spec.effective_potential_prime(x) * (x + c.delta * spec.penalty_x(x));
}

double s1_bound(const LyapunovConstants& c, double x) { return c.gamma - c.gamma_tilde * x * x; }

double s2(const LyapunovConstants& c, const ModelSpec& spec, double y, double x) {
    return -y * (x * (spec.damping - c.epsilon) + spec.penalty_x(x)) - spec.penalty_y(y) * (c.delta * y + x);
}

double s2_bound(const LyapunovConstants& c, double y, double x) {
    const double t = c.damping + c.n;
    return t * t * y * y / (2.0 * c.gamma_tilde) + 0.5 * c.gamma_tilde * x * x + c.delta * std::abs(y) + std::abs(x);
}

double s3(const LyapunovConstants& c, const ModelSpec& spec, double eta) {
    const auto& od = std::get<OverdampedNoise>(spec.noise);
    return 0.5 * c.xi - od.v_prime(eta) * c.xi * eta + 0.5 * c.epsilon * c.xi * eta * eta;
}

double s3_bound(const LyapunovConstants& c, double eta) { return 0.5 * c.xi - 0.5 * c.xi * c.r * eta * eta; }

double s4(const LyapunovConstants& c, const ModelSpec& spec, double eta, double zeta) {
    const auto& hn = hamiltonian_of(spec);
    return c.k * hn.generator_of_energy(eta, zeta) + c.epsilon * c.k * (hn.energy(eta, zeta) + c.bound_m);
}

double s4_bound(const LyapunovConstants& c, double eta, double zeta) {
    return c.bound_m * (1.0 + c.k * c.delta_tilde) - c.k4zeta * (zeta * zeta + eta * eta);
}

double framed_bound(const LyapunovConstants& c, const State& z) {
    const double y = z.y();
    const double x = z.x();
    const double lin = c.delta * std::abs(y) + std::abs(x);
    switch (z.dim()) {
        case 2: return c.k2 - c.k2y * y * y - c.k2x * x * x + lin;
        case 3: return c.k3 - c.k3eta * z.eta() * z.eta() - c.k3y * y * y - c.k3x * x * x + lin;
        default:
            return c.k4 - c.k4zeta * z.zeta() * z.zeta() - c.k4eta * z.eta() * z.eta() - c.k4y * y * y -
                   c.k4x * x * x + lin;
    }
}

DriftGrid DriftGrid::cube(int dim, double lo, double hi, std::size_t points) {
    if (dim < 2 || dim > 4 || points < 2 || !(lo < hi)) {
        throw ContractViolation("drift grid needs dim in 2..4, >= 2 points and lo < hi");
    }
    DriftGrid g;
    g.lo.assign(dim, lo);
    g.hi.assign(dim, hi);
    g.points.assign(dim, points);
    return g;
}

std::size_t DriftGrid::size() const noexcept {
    std::size_t s = 1;
    for (auto p : points) {
        s *= p;
    }
    return s;
}

State DriftGrid::point(std::size_t flat) const {
    State z(dim());
    for (int a = dim() - 1; a >= 0; --a) {
        const std::size_t i = flat % points[a];
        flat /= points[a];
        z[a] = points[a] == 1 ? lo[a] : lo[a] + (hi[a] - lo[a]) * static_cast<double>(i) / (points[a] - 1);
    }
    return z;
}

std::string DriftGrid::describe() const {
    std::ostringstream out;
    const auto names = component_names(dim());
    for (int a = 0; a < dim(); ++a) {
        out << (a ? " x " : "") << names[a] << "[" << format_double(lo[a]) << "," << format_double(hi[a]) << "]/"
            << points[a];
    }
    return out.str();
}

DriftReport certify_drift(const LyapunovConstants& c, const ModelSpec& spec, const DriftGrid& grid,
                          const DriftEvaluator& value_of, const DriftEvaluator& v_of, std::size_t max_recorded) {
    if (grid.dim() != spec.dimension()) {
        throw ContractViolation("grid dimension does not match the model");
    }
    struct Partial {
        double sup = -std::numeric_limits<double>::infinity();
        State argmax;
        double min_slack = std::numeric_limits<double>::infinity();
        double slack_sum = 0.0;
        double min_v = std::numeric_limits<double>::infinity();
        std::size_t v_below_one = 0;
        std::size_t violation_count = 0;
        std::vector<DriftPoint> violations;
    };
    const int threads = default_thread_count();
    std::vector<Partial> parts(static_cast<std::size_t>(std::max(threads, 1)));
    parallel_for(
        grid.size(),
        [&](std::size_t begin, std::size_t end, int worker) {
            Partial& p = parts[worker];
            for (std::size_t i = begin; i < end; ++i) {
                const State z = grid.point(i);
                const double value = value_of ? value_of(z) : eval_AV_plus_epsV(c, spec, z);
                const double bound = framed_bound(c, z);
                const double v = v_of ? v_of(z) : eval_V(c, spec, z);
                if (value > p.sup) {
                    p.sup = value;
                    p.argmax = z;
                }
                const double slack = bound - value;
                p.min_slack = std::min(p.min_slack, slack);
                p.slack_sum += slack;
                p.min_v = std::min(p.min_v, v);
                if (v < 1.0 - 1e-12) {
                    ++p.v_below_one;
                }
                if (!(slack >= -1e-12 * (1.0 + std::abs(value) + std::abs(bound)))) {
                    ++p.violation_count;
                    if (p.violations.size() < max_recorded) {
                        p.violations.push_back({z, value, bound});
                    }
                }
            }
        },
        threads);

    DriftReport r;
    r.grid = grid.describe();
    r.points = grid.size();
    r.sup_value = -std::numeric_limits<double>::infinity();
    r.min_slack = std::numeric_limits<double>::infinity();
    r.min_v = std::numeric_limits<double>::infinity();
    double slack_sum = 0.0;
    for (const auto& p : parts) {
        if (p.sup > r.sup_value) {
            r.sup_value = p.sup;
            r.argmax = p.argmax;
        }
        r.min_slack = std::min(r.min_slack, p.min_slack);
        r.min_v = std::min(r.min_v, p.min_v);
        slack_sum += p.slack_sum;
        r.v_below_one += p.v_below_one;
        r.violation_count += p.violation_count;
        for (const auto& v : p.violations) {
            if (r.violations.size() < max_recorded) {
                r.violations.push_back(v);
            }
        }
    }
    r.mean_slack = slack_sum / static_cast<double>(r.points);
    r.inferred_c = r.sup_value;
    return r;
}

}  // namespace penosc
