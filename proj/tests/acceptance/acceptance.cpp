// Acceptance run: one PASS/FAIL line per criterion, indented detail lines below it.
//   penosc_acceptance [--unit <path to penosc_unit>] [--only 1,3,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "penosc/crossing.hpp"
#include "penosc/csv.hpp"
#include "penosc/lyapunov.hpp"
#include "penosc/pde.hpp"
#include "penosc/simulate.hpp"

using namespace penosc;

namespace {

struct Verdict {
    bool pass = false;
    std::string summary;
    std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CsvTable run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "penosc");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    if (code != cli::kOk) {
        throw std::runtime_error("penosc failed: " + err.str());
    }
    std::istringstream in(out.str());
    return read_csv(in);
}

ModelSpec reduced_friction(long n) {
    ModelSpec s;
    s.kind = ModelKind::Friction;
    s.n = PenalizationLevel(n);
    s.potential = Potential::zero();
    return s;
}

// ---------------------------------------------------------------------------

Verdict table4() {
    const std::vector<double> ns{2, 5, 10, 50, 100, 1000};
    const std::vector<double> reference{0.174466, 0.143272, 0.138434, 0.136834, 0.136784, 0.136767};
    const auto at100 = run_cli({"table4", "--T", "100"});
    const auto at10 = run_cli({"table4", "--T", "10"});

    struct Reading {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Reading> readings(4);
    readings[0].name = "v(0,100)";
    readings[1].name = "v(0,100)/100";
    readings[2].name = "v(0,10)";
    readings[3].name = "v(0,10)/10";
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double v100 = at100.number(i, 1);
        const double v10 = at10.number(i, 1);
        readings[0].values.push_back(v100);
        readings[1].values.push_back(v100 / 100.0);
        readings[2].values.push_back(v10);
        readings[3].values.push_back(v10 / 10.0);
    }

    Verdict v;
    std::string matched;
    for (const auto& r : readings) {
        double worst = 0.0;
        bool ordered = true;
        std::string row;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            worst = std::max(worst, std::abs(r.values[i] - reference[i]) / reference[i]);
            if (i > 0 && !(r.values[i] < r.values[i - 1])) {
                ordered = false;
            }
            row += fmt(" %.6f", r.values[i]);
        }
        const bool ok = worst <= 0.02 && ordered;
        v.details.push_back(fmt("reading %-13s max rel err %.2e, strictly decreasing %s, %s:%s", r.name.c_str(), worst,
                                ordered ? "yes" : "no", ok ? "match" : "no match", row.c_str()));
        if (ok && matched.empty()) {
            matched = r.name;
        }
    }
    const auto& q = readings[1].values;
    v.details.push_back(fmt("n=100 vs n=1000 relative gap under v(0,100)/100: %.2e (N = 2001 resolves it only "
                            "to round-off)",
                            (q[4] - q[5]) / q[5]));

    // same pair on a ten times finer velocity grid
    Grid1D fine;
    fine.N = 20001;
    const auto f100 = solve_v(fine, PenalizationLevel(100), Observable::identity(), {100.0}).v0().back() / 100.0;
    const auto f1000 = solve_v(fine, PenalizationLevel(1000), Observable::identity(), {100.0}).v0().back() / 100.0;
    v.details.push_back(fmt("N = 20001: v(0,100)/100 = %.6f (n=100), %.6f (n=1000); reference 0.136784, 0.136767",
                            f100, f1000));

    v.pass = !matched.empty();
    v.summary = v.pass ? "reference values match under reading " + matched : "no reading matches the reference values";
    return v;
}

// ---------------------------------------------------------------------------

Verdict fig2a() {
    const long M = 100000;
    const double dt = 1e-3;
    std::vector<double> taus;
    for (int i = 0; i < 25; ++i) {
        const double t = 0.1 * std::pow(100.0, i / 24.0);
        taus.push_back(std::round(t / dt) * dt);
    }
    Grid1D g;
    g.T = taus.back();
    const auto sol = solve_v(g, PenalizationLevel(100), Observable::identity(), taus);
    const auto pde = sol.v0();  // pde[0] is tau = 0
    const auto mc = reduced_integral_moments(ReducedFriction{}, Observable::identity(), dt, taus, M, 20240601);

    Verdict v;
    double worst_ratio = 0.0;
    double worst_tau = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double a = pde[i + 1];
        const double b = mc.variance[i].estimate;
        const double allowed = std::max(0.05 * std::abs(a), 3.0 * mc.variance[i].std_error);
        const double ratio = std::abs(a - b) / allowed;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_tau = taus[i];
        }
        if (i % 6 == 0 || i + 1 == taus.size()) {
            v.details.push_back(fmt("tau %7.3f  pde %.6f  mc %.6f +- %.6f", taus[i], a, b, mc.variance[i].std_error));
        }
    }
    v.pass = worst_ratio <= 1.0;
    v.summary = fmt("max |pde - mc| / allowance = %.3f at tau = %.3f over 25 log-spaced tau in [0.1, 10], %ld paths",
                    worst_ratio, worst_tau, M);
    return v;
}

// ---------------------------------------------------------------------------

Verdict fig2b() {
    const auto gamma = gamma_from_v(solve_v(Grid1D{}, PenalizationLevel(100), Observable::identity()));
    const double b = 0.6;
    const std::vector<double> horizons{5.0, 10.0, 20.0};
    const std::vector<double> ps{1, 10, 100, 1000};
    const long M = 10000;

    std::vector<double> ref;
    for (double T : horizons) {
        ref.push_back(asymptotic_crossing(gamma, b, T).probability);
    }
    Verdict v;
    v.details.push_back(fmt("gamma^2 = %.6f from the PDE slope; W* = %.6f, %.6f, %.6f at T = 5, 10, 20",
                            gamma.gamma_squared, ref[0], ref[1], ref[2]));
    // binomial error under the reference value keeps the test meaningful when every path crosses
    auto se = [&](const CrossingEstimate& e, double w) {
        return std::max(e.std_error, std::sqrt(w * (1.0 - w) / static_cast<double>(M)));
    };
    std::vector<double> gap;
    std::vector<double> gap_se;
    std::vector<CrossingEstimate> last;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const auto curve = estimate_crossing_curve(reduced_friction(100), b, ps[k], horizons, Observable::identity(),
                                                   M, 1e-3, 777 + k);
        gap.push_back(std::abs(curve[2].probability - ref[2]));
        gap_se.push_back(se(curve[2], ref[2]));
        v.details.push_back(fmt("p = %-5g  W = %.4f, %.4f, %.4f  |W - W*| at T=20: %.2e (se %.1e)", ps[k],
                                curve[0].probability, curve[1].probability, curve[2].probability, gap.back(),
                                gap_se.back()));
        last = curve;
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < ps.size(); ++k) {
        if (gap[k] > gap[k - 1] + 2.0 * std::hypot(gap_se[k], gap_se[k - 1])) {
            decreasing = false;
        }
    }
    bool close = true;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        const double z = std::abs(last[i].probability - ref[i]) / se(last[i], ref[i]);
        worst_z = std::max(worst_z, z);
        close = close && z <= 3.0;
    }
    v.pass = decreasing && close;
    v.summary = fmt("gap decreasing in p within 2 se: %s; p = 1000 vs W* at T = 5, 10, 20: max %.2f se",
                    decreasing ? "yes" : "no", worst_z);
    return v;
}

// ---------------------------------------------------------------------------

struct GibbsCompare {
    long occupied = 0;
    long within = 0;
    double fraction() const { return occupied ? static_cast<double>(within) / occupied : 0.0; }
};

GibbsCompare compare_gibbs(const Histogram& h, double c, double n) {
    const oracle::GibbsObstacle gibbs{c, n};
    GibbsCompare out;
    const auto& ay = h.axes[0];
    const auto& ax = h.axes[1];
    std::vector<double> py(ay.bins);
    std::vector<double> px(ax.bins);
    for (int i = 0; i < ay.bins; ++i) {
        py[i] = gibbs.y_mass(ay.lo + i * ay.width(), ay.lo + (i + 1) * ay.width());
    }
    for (int j = 0; j < ax.bins; ++j) {
        px[j] = gibbs.x_mass(ax.lo + j * ax.width(), ax.lo + (j + 1) * ax.width());
    }
    for (std::size_t f = 0; f < h.size(); ++f) {
        if (h.counts[f] <= 0.0) {
            continue;
        }
        const auto idx = h.unravel(f);
        const double expect = py[idx[0]] * px[idx[1]] / h.bin_volume();
        ++out.occupied;
        out.within += std::abs(h.density[f] - expect) <= 3.0 * h.density_stderr[f];
    }
    return out;
}

Verdict gibbs() {
    Verdict v;
    bool literal_ok = true;
    bool corrected_ok = true;
    std::string literal_row;
    std::string corrected_row;
    for (long n : {2L, 100L}) {
        ModelSpec spec;
        spec.kind = ModelKind::Obstacle;
        spec.n = PenalizationLevel(n);
        spec.potential = Potential::quadratic(1.0);
        SimConfig cfg;
        cfg.T = 1e4;
        cfg.dt = default_dt(spec);
        cfg.seed = 4242 + n;
        // state (y, x): component 0 is y
        const auto h = empirical_invariant_density(spec, cfg, default_burn_in(cfg),
                                                   {HistogramAxis{0, -2.0, 2.0, 40}, HistogramAxis{1, -2.0, 2.0, 40}});
        const auto lit = compare_gibbs(h, spec.damping, static_cast<double>(n));
        const auto cor = compare_gibbs(h, 2.0 * spec.damping, static_cast<double>(n));
        literal_ok = literal_ok && lit.fraction() >= 0.95;
        corrected_ok = corrected_ok && cor.fraction() >= 0.95;
        literal_row += fmt(" n=%ld: %ld/%ld (%.1f%%)", n, lit.within, lit.occupied, 100.0 * lit.fraction());
        corrected_row += fmt(" n=%ld: %ld/%ld (%.1f%%)", n, cor.within, cor.occupied, 100.0 * cor.fraction());
    }
    v.details.push_back("density exp(-C_b H_n), bins within 3 se:" + literal_row);
    v.details.push_back("density exp(-2 C_b H_n), bins within 3 se:" + corrected_row);
    v.details.push_back(std::string("unit-diffusion Fokker-Planck gives exp(-2 C_b H_n); the corrected density ") +
                        (corrected_ok ? "passes" : "fails") + " the same test");
    v.pass = literal_ok;
    v.summary = literal_ok ? "histogram agrees with exp(-C_b H_n)"
                           : "histogram disagrees with the stated density exp(-C_b H_n)";
    return v;
}

// ---------------------------------------------------------------------------

Verdict wstar() {
    const std::vector<oracle::WienerMaxQuery> qs{{0.5, 1.0}, {1.0, 1.0}, {1.0, 4.0}, {2.0, 1.0}};
    const long paths = 1000000;
    const auto mc = oracle::wiener_max(qs, 1e-4, paths, 99);
    Verdict v;
    v.pass = true;
    double worst = 0.0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
        const auto s = w_star(qs[j].b, qs[j].T);
        const double p = mc.bridge[j];
        const double se = std::sqrt(p * (1.0 - p) / paths);
        const double z = std::abs(p - s.probability) / se;
        const double zd = std::abs(mc.discrete[j] - s.probability) / se;
        worst = std::max(worst, z);
        v.pass = v.pass && z <= 3.0 && s.truncation_bound <= 1e-12;
        v.details.push_back(fmt("(b, T) = (%g, %g)  series %.6f (trunc %.1e)  mc %.6f +- %.6f  z %.2f;  grid-only "
                                "max %.6f  z %.1f",
                                qs[j].b, qs[j].T, s.probability, s.truncation_bound, p, se, z, mc.discrete[j], zd));
    }
    v.summary = fmt("series vs bridge-sampled Wiener max, %ld paths at dt = 1e-4: max %.2f se", paths, worst);
    return v;
}

// ---------------------------------------------------------------------------

Verdict certification() {
    Verdict v;
    v.pass = true;
    long combos = 0;
    for (auto kind : {ModelKind::ElastoPlastic, ModelKind::Friction, ModelKind::Obstacle}) {
        for (int noise = 0; noise < 3; ++noise) {
            ModelSpec spec;
            spec.kind = kind;
            if (noise == 1) {
                spec.noise = OverdampedNoise::ornstein_uhlenbeck(1.0);
            } else if (noise == 2) {
                spec.noise = HamiltonianNoise::kanai_tajimi(1.0, 1.0);
            }
            const auto c = select_constants(spec);
            const auto grid = DriftGrid::cube(spec.dimension(), -10.0, 10.0, 101);
            const auto r = certify_drift(c, spec, grid);
            const bool ok = r.ok() && std::isfinite(r.inferred_c);
            v.pass = v.pass && ok;
            ++combos;
            v.details.push_back(fmt("%-3s %-6s %9zu points  violations %zu  C = %.4g  min slack %.3g  %s",
                                    model_key(kind).c_str(), noise_name(spec.noise).c_str(), r.points,
                                    r.violation_count, r.inferred_c, r.min_slack, ok ? "ok" : "FAILED"));
        }
    }
    v.summary = fmt("%ld model x noise combinations on 101^d grids over [-10, 10]^d", combos);
    return v;
}

// ---------------------------------------------------------------------------

Verdict properties(const std::string& unit) {
    Verdict v;
    if (unit.empty()) {
        v.summary = "unit test binary not supplied (--unit)";
        return v;
    }
    const std::string cmd = "\"" + unit + "\" --gtest_brief=1 --gtest_filter='*Property*' > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    v.pass = status == 0;
    v.summary = v.pass ? "all *Property* suites of the unit tests pass" : "a property suite failed (run penosc_unit)";
    v.details.push_back("filter *Property*: penalization, drift, penalty bounds, constants, generator vs finite "
                        "differences, claim bounds, certification, simulation, operator, symmetry, W* scaling, "
                        "crossing monotonicity");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    std::string unit;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--unit" && i + 1 < argc) {
            unit = argv[++i];
        } else if (a == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string t;
            while (std::getline(ss, t, ',')) {
                only.insert(std::stoi(t));
            }
        } else {
            std::cerr << "usage: penosc_acceptance [--unit path] [--only 1,2,...]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"table4 reproduction", table4},
        {"PDE vs Monte Carlo variance", fig2a},
        {"crossing convergence", fig2b},
        {"Gibbs density", gibbs},
        {"W* series vs Wiener-max MC", wstar},
        {"Foster-Lyapunov certification", certification},
        {"property suites", [&] { return properties(unit); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.summary = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (v.pass ? "PASS" : "FAIL") << " C" << id << " " << criteria[i].first << ": " << v.summary
                  << fmt(" [%.0f s]", secs) << '\n';
        for (const auto& d : v.details) {
            std::cout << "    " << d << '\n';
        }
        std::cout.flush();
        failed += !v.pass;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criterion(s) failed" : "acceptance: all passed")
              << '\n';
    return failed ? 1 : 0;
}
