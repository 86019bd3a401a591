#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "penosc/config.hpp"
#include "penosc/crossing.hpp"
#include "penosc/csv.hpp"
#include "penosc/error.hpp"
#include "penosc/lyapunov.hpp"
#include "penosc/parallel.hpp"
#include "penosc/pde.hpp"
#include "penosc/simulate.hpp"

namespace penosc::cli {

namespace {

std::string to_text(double v) { return format_double(v); }
std::string to_text(long v) { return std::to_string(v); }
std::string to_text(int v) { return std::to_string(v); }
std::string to_text(std::uint64_t v) { return std::to_string(v); }
std::string to_text(const std::string& v) { return v; }
std::string to_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
std::string to_text(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& e : v) {
        s += (s.empty() ? "" : ";") + e;
    }
    return s;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) {
                throw std::invalid_argument(cell);
            }
        } catch (const std::exception&) {
            throw UsageError("bad number '" + cell + "' in list '" + text + "'");
        }
    }
    if (out.empty()) {
        throw UsageError("empty list");
    }
    return out;
}

/// Remembers every option of a subcommand so the resolved values (defaults
/// included) can be written to the manifest and replayed as flags.
class Recorder {
public:
    template <class T>
    CLI::Option* option(CLI::App* app, const std::string& name, T& var, const std::string& help) {
        items_.emplace_back(name, [&var] { return to_text(var); });
        return app->add_option("--" + name, var, help);
    }

    void record(const std::string& name, std::function<std::string()> value) {
        items_.emplace_back(name, std::move(value));
    }

    [[nodiscard]] std::vector<std::pair<std::string, std::string>> values() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [k, f] : items_) {
            out.emplace_back(k, f());
        }
        return out;
    }

private:
    std::vector<std::pair<std::string, std::function<std::string()>>> items_;
};

/// Model keys as flags. Precedence: flag > --config file > subcommand defaults.
class ModelFlags {
public:
    ModelFlags(CLI::App* app, ModelConfig defaults, std::vector<std::string> keys = ModelConfig::keys())
        : defaults_(std::move(defaults)) {
        app->add_option("--config", config_, "key=value model configuration file");
        for (const auto& key : keys) {
            auto& slot = values_[key];
            options_[key] = app->add_option("--" + key, slot, "model key '" + key + "' (default " +
                                                                   defaults_.get(key) + ")");
        }
    }

    [[nodiscard]] ModelConfig resolve() const {
        ModelConfig cfg = config_.empty() ? defaults_ : load_model_config(config_, defaults_);
        for (const auto& [key, opt] : options_) {
            if (opt->count() > 0) {
                cfg.set(key, values_.at(key));
            }
        }
        return cfg;
    }

    [[nodiscard]] const std::map<std::string, std::string>& keys() const { return values_; }

private:
    ModelConfig defaults_;
    std::string config_;
    std::map<std::string, std::string> values_;
    std::map<std::string, CLI::Option*> options_;
};

/// Shared state of one invocation.
struct Run {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> args;
    std::optional<ModelConfig> model;
    std::optional<std::uint64_t> seed;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;

    /// Writes `content` to `path` (stdout when empty) plus its manifest.
    void emit(const std::string& path, const std::string& content,
              const std::vector<std::pair<std::string, std::string>>& extra = {}) const {
        if (path.empty()) {
            *out << content;
            return;
        }
        {
            std::ofstream f(path, std::ios::binary);
            if (!f) {
                throw DomainError("cannot write " + path);
            }
            f << content;
        }
        Manifest m;
        m.set("tool", "penosc");
        m.set("version", kToolVersion);
        m.set("subcommand", subcommand);
        m.set("seed", seed ? std::to_string(*seed) : std::string());
        m.set("outputs", path);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        m.set("duration_s", format_double(secs));
        m.set("threads", std::to_string(default_thread_count()));
        if (model) {
            for (const auto& [k, v] : model->entries()) {
                m.set("config." + k, v);
            }
        }
        for (const auto& [k, v] : extra) {
            m.set("result." + k, v);
        }
        for (const auto& [k, v] : args) {
            m.set("arg." + k, v);
        }
        m.write(manifest_path(path));
    }
};

// --- subcommands -----------------------------------------------------------

struct SimulateArgs {
    double T = 50.0;
    std::optional<double> dt;
    long stride = 1;
    std::uint64_t seed = 0;
    std::string z0;
    std::string out;
};

SimConfig sim_config(const ModelSpec& spec, double T, const std::optional<double>& dt, long stride,
                     std::uint64_t seed, const std::string& z0) {
    SimConfig cfg;
    cfg.T = T;
    cfg.dt = dt ? *dt : default_dt(spec);
    cfg.stride = stride;
    cfg.seed = seed;
    if (!z0.empty()) {
        const auto v = parse_list(z0);
        if (static_cast<int>(v.size()) != spec.dimension()) {
            throw UsageError("--z0 needs " + std::to_string(spec.dimension()) + " components");
        }
        State z(spec.dimension());
        for (int i = 0; i < spec.dimension(); ++i) {
            z[i] = v[i];
        }
        cfg.z0 = z;
    }
    cfg.validate(spec.dimension());
    return cfg;
}

void do_simulate(Run& run, const SimulateArgs& a) {
    const ModelSpec spec = run.model->build();
    const SimConfig cfg = sim_config(spec, a.T, a.dt, a.stride, a.seed, a.z0);
    const Trajectory tr = simulate_path(spec, cfg);
    std::ostringstream s;
    CsvWriter w(s);
    std::vector<std::string> cols{"t"};
    for (const char* name : component_names(spec.dimension())) {
        cols.emplace_back(name);
    }
    w.header(cols);
    std::vector<double> row(static_cast<std::size_t>(spec.dimension()) + 1);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        row[0] = tr.times[i];
        for (int c = 0; c < spec.dimension(); ++c) {
            row[c + 1] = tr.states[i][c];
        }
        w.row(row);
    }
    run.emit(a.out, s.str(), {{"model_digest", std::to_string(tr.model_digest)}});
}

struct InvariantArgs {
    double T = 1000.0;
    std::optional<double> dt;
    std::optional<double> burn_in;
    long stride = 1;
    int batches = 20;
    std::uint64_t seed = 0;
    std::vector<std::string> axes;
    std::string out;
};

HistogramAxis parse_axis(const std::string& text, int dim) {
    // component:lo:hi:bins
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) {
        parts.push_back(p);
    }
    if (parts.size() != 4) {
        throw UsageError("--axis expects component:lo:hi:bins, got '" + text + "'");
    }
    const auto names = component_names(dim);
    HistogramAxis axis;
    axis.component = -1;
    for (int i = 0; i < dim; ++i) {
        if (parts[0] == names[i]) {
            axis.component = i;
        }
    }
    if (axis.component < 0) {
        throw UsageError("unknown component '" + parts[0] + "' for a state of dimension " + std::to_string(dim));
    }
    try {
        axis.lo = std::stod(parts[1]);
        axis.hi = std::stod(parts[2]);
        axis.bins = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw UsageError("bad number in --axis '" + text + "'");
    }
    if (!(axis.lo < axis.hi) || axis.bins < 1) {
        throw UsageError("--axis needs lo < hi and bins >= 1");
    }
    return axis;
}

void do_invariant(Run& run, const InvariantArgs& a) {
    const ModelSpec spec = run.model->build();
    const SimConfig cfg = sim_config(spec, a.T, a.dt, a.stride, a.seed, "");
    std::vector<HistogramAxis> axes;
    for (const auto& t : a.axes) {
        axes.push_back(parse_axis(t, spec.dimension()));
    }
    if (axes.empty()) {
        axes = {parse_axis("y:-3:3:60", spec.dimension()), parse_axis("x:-3:3:60", spec.dimension())};
    }
    const double burn = a.burn_in ? *a.burn_in : default_burn_in(cfg);
    const Histogram h = empirical_invariant_density(spec, cfg, burn, axes, a.batches);
    std::ostringstream s;
    CsvWriter w(s);
    std::vector<std::string> cols;
    const auto names = component_names(spec.dimension());
    for (const auto& ax : h.axes) {
        cols.emplace_back(names[ax.component]);
    }
    cols.emplace_back("count");
    cols.emplace_back("density");
    w.header(cols);
    std::vector<double> row(h.axes.size() + 2);
    for (std::size_t j = 0; j < h.size(); ++j) {
        const auto idx = h.unravel(j);
        for (std::size_t ax = 0; ax < h.axes.size(); ++ax) {
            row[ax] = h.axes[ax].center(idx[ax]);
        }
        row[h.axes.size()] = h.counts[j];
        row[h.axes.size() + 1] = h.density[j];
        w.row(row);
    }
    run.emit(a.out, s.str(),
             {{"samples", std::to_string(h.samples)}, {"outside", std::to_string(h.outside)},
              {"burn_in", format_double(burn)}});
}

struct DriftArgs {
    double margin = 1.01;
    double lo = -10.0;
    double hi = 10.0;
    long points = 0;
    std::string emit = "violations";
    std::string out;
};

int do_drift(Run& run, const DriftArgs& a) {
    const ModelSpec spec = run.model->build();
    const int d = spec.dimension();
    if (a.emit != "all" && a.emit != "violations") {
        throw UsageError("--emit must be 'all' or 'violations'");
    }
    const long points = a.points > 0 ? a.points : (d == 2 ? 101 : (d == 3 ? 41 : 21));
    const LyapunovConstants c = select_constants(spec, a.margin);
    const DriftGrid grid = DriftGrid::cube(d, a.lo, a.hi, static_cast<std::size_t>(points));
    const DriftReport r = certify_drift(c, spec, grid, {}, {}, static_cast<std::size_t>(-1));

    std::ostringstream s;
    CsvWriter w(s);
    std::vector<std::string> cols;
    for (const char* name : component_names(d)) {
        cols.emplace_back(name);
    }
    cols.insert(cols.end(), {"value", "bound", "slack"});
    w.header(cols);
    std::vector<double> row(static_cast<std::size_t>(d) + 3);
    auto put = [&](const State& z, double value, double bound) {
        for (int i = 0; i < d; ++i) {
            row[i] = z[i];
        }
        row[d] = value;
        row[d + 1] = bound;
        row[d + 2] = bound - value;
        w.row(row);
    };
    if (a.emit == "all") {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const State z = grid.point(i);
            put(z, eval_AV_plus_epsV(c, spec, z), framed_bound(c, z));
        }
    } else {
        for (const auto& v : r.violations) {
            put(v.z, v.value, v.bound);
        }
    }
    const std::vector<std::pair<std::string, std::string>> summary{
        {"grid", r.grid},
        {"points", std::to_string(r.points)},
        {"sup", format_double(r.sup_value)},
        {"inferred_c", format_double(r.inferred_c)},
        {"min_slack", format_double(r.min_slack)},
        {"min_v", format_double(r.min_v)},
        {"violations", std::to_string(r.violation_count)},
        {"delta", format_double(c.delta)},
        {"epsilon", format_double(c.epsilon)}};
    run.emit(a.out, s.str(), summary);
    std::ostream& log = a.out.empty() ? *run.err : *run.out;
    for (const auto& [k, v] : summary) {
        log << k << '=' << v << '\n';
    }
    return r.ok() ? kOk : kDomainError;
}

struct GridArgs {
    double L = 10.0;
    long N = 2001;
    double dt = 1e-3;
    double T = 100.0;

    void attach(Recorder& rec, CLI::App* app, const std::string& prefix = "") {
        rec.option(app, "L", L, "half-width of the velocity domain");
        rec.option(app, "N", N, "number of grid nodes");
        rec.option(app, prefix + "dt", dt, "time step of the implicit scheme");
        rec.option(app, prefix + "T", T, "final time");
    }

    [[nodiscard]] Grid1D grid() const { return Grid1D{L, N, dt, T}; }
};

struct PdeArgs {
    GridArgs grid;
    long n = 100;
    std::string g = "identity";
    std::string snapshots;
    std::string out;
};

void do_pde(Run& run, const PdeArgs& a) {
    const Grid1D grid = a.grid.grid();
    const Observable g = Observable::parse(a.g);
    const PdeSolution sol = solve_v(grid, PenalizationLevel(a.n), g);
    const auto w0 = sol.w0();
    const auto v0 = sol.v0();
    std::ostringstream s;
    CsvWriter w(s);
    w.header({"tau", "w0", "v0"});
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        w.row({sol.times[i], w0[i], v0[i]});
    }
    run.emit(a.out, s.str());
    if (!a.snapshots.empty()) {
        std::ostringstream f;
        CsvWriter fw(f);
        fw.header({"tau", "y", "w", "v"});
        for (std::size_t i = 0; i < sol.times.size(); ++i) {
            for (long j = 0; j < grid.N; ++j) {
                fw.row({sol.times[i], grid.node(j), sol.w[i][j], sol.v[i][j]});
            }
        }
        run.emit(a.snapshots, f.str());
    }
}

struct Table4Args {
    GridArgs grid;
    std::string g = "identity";
    std::string out;
};

void do_table4(Run& run, const Table4Args& a) {
    const Grid1D grid = a.grid.grid();
    const Observable g = Observable::parse(a.g);
    const std::vector<long> ns{2, 5, 10, 50, 100, 1000};
    std::vector<double> v(ns.size());
    parallel_for(ns.size(), [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            v[i] = solve_v(grid, PenalizationLevel(ns[i]), g, {grid.T}).v0().back();
        }
    });
    std::ostringstream s;
    CsvWriter w(s);
    w.header({"n", "v0T"});
    for (std::size_t i = 0; i < ns.size(); ++i) {
        w.row({static_cast<double>(ns[i]), v[i]});
    }
    run.emit(a.out, s.str());
}

struct GammaArgs {
    GridArgs grid;
    long n = 100;
    std::string g = "identity";
    double window = 0.5;
    std::string out;
};

GammaEstimate compute_gamma(const Grid1D& grid, long n, const Observable& g, double window) {
    return gamma_from_v(solve_v(grid, PenalizationLevel(n), g), window);
}

void do_gamma(Run& run, const GammaArgs& a) {
    const GammaEstimate est = compute_gamma(a.grid.grid(), a.n, Observable::parse(a.g), a.window);
    std::ostringstream s;
    CsvWriter w(s);
    w.header({"n", "gamma2", "gamma", "residual", "window_lo", "window_hi", "points"});
    w.row({static_cast<double>(a.n), est.gamma_squared, est.gamma(), est.residual, est.window_lo, est.window_hi,
           static_cast<double>(est.points)});
    run.emit(a.out, s.str());
}

struct CrossingArgs {
    double b = 0.6;
    double T = 20.0;
    std::optional<double> p;
    long M = 10000;
    std::optional<double> dt;
    std::string method = "asymptotic";
    std::optional<double> gamma2;
    long points = 20;
    std::uint64_t seed = 0;
    std::string g = "identity";
    GridArgs pde;
    std::string out;
};

double resolve_gamma2(const ModelSpec& spec, const std::optional<double>& given, const GridArgs& pde,
                      const Observable& g) {
    if (given) {
        return *given;
    }
    if (!is_reduced_friction(spec) || spec.damping != 1.0) {
        throw UsageError("the PDE gamma covers the friction model with U = 0 and C_b = 1 only; pass --gamma2");
    }
    return compute_gamma(pde.grid(), spec.n.value(), g, 0.5).gamma_squared;
}

std::vector<double> horizon_grid(double T, long points) {
    if (points < 1) {
        throw UsageError("--points must be >= 1");
    }
    std::vector<double> h;
    for (long j = 1; j <= points; ++j) {
        h.push_back(T * static_cast<double>(j) / static_cast<double>(points));
    }
    return h;
}

void do_crossing(Run& run, const CrossingArgs& a) {
    if (a.method != "mc" && a.method != "asymptotic" && a.method != "both") {
        throw UsageError("--method must be mc, asymptotic or both");
    }
    const bool mc = a.method != "asymptotic";
    const bool asym = a.method != "mc";
    if (mc && !a.p) {
        throw UsageError("--method " + a.method + " needs --p");
    }
    const ModelSpec spec = run.model->build();
    const Observable g = Observable::parse(a.g);
    const auto horizons = horizon_grid(a.T, a.points);
    std::ostringstream s;
    CsvWriter(s).header({"T", "estimate", "stderr", "method"});
    auto put = [&s](double t, double estimate, double se, const char* method) {
        s << format_double(t) << ',' << format_double(estimate) << ',' << format_double(se) << ',' << method << '\n';
    };
    std::vector<std::pair<std::string, std::string>> extra;
    if (mc) {
        const double dt = a.dt ? *a.dt : default_dt(spec);
        const auto curve = estimate_crossing_curve(spec, a.b, *a.p, horizons, g, a.M, dt, a.seed);
        for (const auto& e : curve) {
            put(e.T, e.probability, e.std_error, "mc");
        }
    }
    if (asym) {
        const double g2 = resolve_gamma2(spec, a.gamma2, a.pde, g);
        extra.emplace_back("gamma2", format_double(g2));
        for (double h : horizons) {
            put(h, asymptotic_crossing(g2, a.b, h).probability, 0.0, "asymptotic");
        }
    }
    run.emit(a.out, s.str(), extra);
}

struct Fig2aArgs {
    long n = 100;
    long M = 100000;
    double tau_min = 0.1;
    double tau_max = 10.0;
    long points = 25;
    double dt = 1e-3;
    double L = 10.0;
    long N = 2001;
    double pde_dt = 1e-3;
    std::uint64_t seed = 0;
    std::string g = "identity";
    std::string out = "fig2a";
};

/// Log-spaced times on [lo, hi] rounded to multiples of `step`, strictly increasing.
std::vector<double> log_grid(double lo, double hi, long points, double step) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw UsageError("log grid needs 0 < tau_min < tau_max and at least 2 points");
    }
    std::vector<long> ks;
    for (long j = 0; j < points; ++j) {
        const double t = lo * std::pow(hi / lo, static_cast<double>(j) / static_cast<double>(points - 1));
        const long k = std::max(1L, std::lround(t / step));
        if (ks.empty() || k > ks.back()) {
            ks.push_back(k);
        }
    }
    std::vector<double> out;
    for (long k : ks) {
        out.push_back(static_cast<double>(k) * step);
    }
    return out;
}

void do_fig2a(Run& run, const Fig2aArgs& a) {
    if (a.M < 2) {
        throw DomainError("the Monte Carlo curve needs at least 2 samples, got " + std::to_string(a.M));
    }
    const Observable g = Observable::parse(a.g);
    const double step = std::max(a.dt, a.pde_dt);
    const auto taus = log_grid(a.tau_min, a.tau_max, a.points, step);
    Grid1D grid{a.L, a.N, a.pde_dt, taus.back()};
    const PdeSolution sol = solve_v(grid, PenalizationLevel(a.n), g, taus);
    const auto v0 = sol.v0();
    const IntegralMoments mc =
        reduced_integral_moments(ReducedFriction{PenalizationLevel(a.n), 1.0}, g, a.dt, taus, a.M, a.seed);

    std::ostringstream pde_csv;
    CsvWriter pw(pde_csv);
    pw.header({"tau", "v0"});
    for (std::size_t i = 1; i < sol.times.size(); ++i) {
        pw.row({sol.times[i], v0[i]});
    }
    std::ostringstream mc_csv;
    CsvWriter mw(mc_csv);
    mw.header({"tau", "v0", "stderr"});
    for (std::size_t i = 0; i < mc.taus.size(); ++i) {
        mw.row({mc.taus[i], mc.variance[i].estimate, mc.variance[i].std_error});
    }
    run.emit(a.out + "_pde.csv", pde_csv.str());
    run.emit(a.out + "_mc.csv", mc_csv.str());
}

struct Fig2bArgs {
    double b = 0.6;
    double T = 20.0;
    long M = 10000;
    std::string p_list = "1,10,100,1000";
    long points = 20;
    std::optional<double> dt;
    std::optional<double> gamma2;
    std::uint64_t seed = 0;
    std::string g = "identity";
    GridArgs pde;
    std::string out;
};

void do_fig2b(Run& run, const Fig2bArgs& a) {
    const ModelSpec spec = run.model->build();
    const Observable g = Observable::parse(a.g);
    const auto ps = parse_list(a.p_list);
    const auto horizons = horizon_grid(a.T, a.points);
    const double dt = a.dt ? *a.dt : default_dt(spec);
    const double g2 = resolve_gamma2(spec, a.gamma2, a.pde, g);
    std::ostringstream s;
    CsvWriter w(s);
    w.header({"series", "T", "estimate", "stderr"});
    for (double p : ps) {
        const auto curve = estimate_crossing_curve(spec, a.b, p, horizons, g, a.M, dt, a.seed);
        const std::vector<std::string> label{"p=" + format_double(p)};
        for (const auto& e : curve) {
            w.row(label, std::vector<double>{e.T, e.probability, e.std_error});
        }
    }
    const std::vector<std::string> label{"wstar"};
    for (double h : horizons) {
        w.row(label, std::vector<double>{h, asymptotic_crossing(g2, a.b, h).probability, 0.0});
    }
    run.emit(a.out, s.str(), {{"gamma2", format_double(g2)}});
}

ModelConfig crossing_defaults() {
    ModelConfig c;
    c.model = "fp";
    c.potential = "zero";
    c.noise = "white";
    return c;
}

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

int do_replay(const std::string& manifest_file, const std::string& out_override, std::ostream& out,
              std::ostream& err) {
    const Manifest m = Manifest::read(manifest_file);
    const std::string* sub = m.get("subcommand");
    if (!sub || *sub == "replay") {
        throw UsageError("manifest has no replayable subcommand");
    }
    std::vector<std::string> argv{"penosc", *sub};
    for (const auto& [k, v] : m.entries) {
        if (k.rfind("arg.", 0) != 0 || v.empty()) {
            continue;
        }
        const std::string name = k.substr(4);
        // repeated options are stored joined by ';'
        std::stringstream parts(name == "out" && !out_override.empty() ? out_override : v);
        std::string part;
        while (std::getline(parts, part, ';')) {
            argv.push_back("--" + name);
            argv.push_back(part);
        }
    }
    return dispatch(argv, out, err);
}

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Penalized non-smooth stochastic oscillators: simulation, drift certification, "
                 "Feynman-Kac PDE and threshold crossing.",
                 "penosc"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.set_version_flag("--version", kToolVersion);

    Run run;
    run.out = &out;
    run.err = &err;
    std::function<int()> action;
    std::map<std::string, Recorder> recorders;
    std::vector<std::unique_ptr<ModelFlags>> flags;

    auto with_model = [&](CLI::App* sc, ModelConfig defaults) -> ModelFlags& {
        flags.push_back(std::make_unique<ModelFlags>(sc, std::move(defaults)));
        ModelFlags& f = *flags.back();
        return f;
    };
    auto finish_model = [&](Recorder& rec, const ModelFlags& f) {
        run.model = f.resolve();
        for (const auto& [k, v] : run.model->entries()) {
            rec.record(k, [v = v] { return v; });
        }
    };

    // simulate
    SimulateArgs sim;
    {
        auto* sc = app.add_subcommand("simulate", "Euler-Maruyama trajectory as CSV t,<components>");
        auto& rec = recorders["simulate"];
        auto& mf = with_model(sc, ModelConfig{});
        rec.option(sc, "T", sim.T, "horizon");
        rec.option(sc, "dt", sim.dt, "time step (default 1e-3 for n <= 100, else 1e-4)");
        rec.option(sc, "stride", sim.stride, "store every stride-th step");
        rec.option(sc, "seed", sim.seed, "RNG seed");
        rec.option(sc, "z0", sim.z0, "initial state, comma separated (default origin)");
        rec.option(sc, "out", sim.out, "output CSV (stdout when omitted)");
        sc->callback([&] {
            finish_model(rec, mf);
            run.seed = sim.seed;
            if (!sim.dt) {
                sim.dt = default_dt(run.model->build());
            }
            action = [&] { do_simulate(run, sim); return kOk; };
        });
    }

    InvariantArgs inv;
    {
        auto* sc = app.add_subcommand("invariant", "empirical invariant density histogram");
        auto& rec = recorders["invariant"];
        auto& mf = with_model(sc, ModelConfig{});
        rec.option(sc, "T", inv.T, "horizon");
        rec.option(sc, "dt", inv.dt, "time step");
        rec.option(sc, "burn_in", inv.burn_in, "discarded initial time (default 0.1 T)");
        rec.option(sc, "stride", inv.stride, "sample every stride-th step");
        rec.option(sc, "batches", inv.batches, "batches for the standard errors");
        rec.option(sc, "seed", inv.seed, "RNG seed");
        rec.option(sc, "axis", inv.axes, "component:lo:hi:bins, repeatable (default y and x on [-3,3] x 60)");
        rec.option(sc, "out", inv.out, "output CSV");
        sc->callback([&] {
            finish_model(rec, mf);
            run.seed = inv.seed;
            if (!inv.dt) {
                inv.dt = default_dt(run.model->build());
            }
            if (!inv.burn_in) {
                inv.burn_in = 0.1 * inv.T;
            }
            action = [&] { do_invariant(run, inv); return kOk; };
        });
    }

    DriftArgs drift_args;
    {
        auto* sc = app.add_subcommand("drift-check", "certify the Foster-Lyapunov drift bound on a grid");
        auto& rec = recorders["drift-check"];
        auto& mf = with_model(sc, ModelConfig{});
        rec.option(sc, "margin", drift_args.margin, "factor above each constant's lower bound");
        rec.option(sc, "lo", drift_args.lo, "grid lower edge");
        rec.option(sc, "hi", drift_args.hi, "grid upper edge");
        rec.option(sc, "points", drift_args.points, "points per axis (default 101, 41, 21 for d = 2, 3, 4)");
        rec.option(sc, "emit", drift_args.emit, "all | violations");
        rec.option(sc, "out", drift_args.out, "output CSV");
        sc->callback([&] {
            finish_model(rec, mf);
            action = [&] { return do_drift(run, drift_args); };
        });
    }

    PdeArgs pde;
    {
        auto* sc = app.add_subcommand("pde", "mean and variance functionals of the 1D friction model");
        auto& rec = recorders["pde"];
        pde.grid.attach(rec, sc);
        rec.option(sc, "n", pde.n, "penalization level");
        rec.option(sc, "g", pde.g, "identity | square | indicator:a,b");
        rec.option(sc, "snapshots", pde.snapshots, "CSV of full fields tau,y,w,v at every checkpoint");
        rec.option(sc, "out", pde.out, "output CSV tau,w0,v0");
        sc->callback([&] { action = [&] { do_pde(run, pde); return kOk; }; });
    }

    Table4Args t4;
    {
        auto* sc = app.add_subcommand("table4", "v(0, T) for n in {2, 5, 10, 50, 100, 1000}");
        auto& rec = recorders["table4"];
        t4.grid.attach(rec, sc);
        rec.option(sc, "g", t4.g, "observable");
        rec.option(sc, "out", t4.out, "output CSV n,v0T");
        sc->callback([&] { action = [&] { do_table4(run, t4); return kOk; }; });
    }

    GammaArgs gam;
    {
        auto* sc = app.add_subcommand("gamma", "CLT coefficient from the slope of v(0, tau)");
        auto& rec = recorders["gamma"];
        gam.grid.attach(rec, sc);
        rec.option(sc, "n", gam.n, "penalization level");
        rec.option(sc, "g", gam.g, "observable");
        rec.option(sc, "window", gam.window, "fit over tau in [window T, T]");
        rec.option(sc, "out", gam.out, "output CSV");
        sc->callback([&] { action = [&] { do_gamma(run, gam); return kOk; }; });
    }

    CrossingArgs cr;
    {
        auto* sc = app.add_subcommand("crossing", "threshold-crossing probability curve over (0, T]");
        auto& rec = recorders["crossing"];
        auto& mf = with_model(sc, crossing_defaults());
        rec.option(sc, "b", cr.b, "threshold");
        rec.option(sc, "T", cr.T, "horizon");
        rec.option(sc, "p", cr.p, "scaling parameter (required for mc and both)");
        rec.option(sc, "M", cr.M, "Monte Carlo paths");
        rec.option(sc, "dt", cr.dt, "Monte Carlo time step");
        rec.option(sc, "method", cr.method, "mc | asymptotic | both");
        rec.option(sc, "gamma2", cr.gamma2, "CLT coefficient squared (computed from the PDE when omitted)");
        rec.option(sc, "points", cr.points, "horizons in the T grid");
        rec.option(sc, "seed", cr.seed, "RNG seed");
        rec.option(sc, "g", cr.g, "observable");
        cr.pde.attach(rec, sc, "pde_");
        rec.option(sc, "out", cr.out, "output CSV");
        sc->callback([&] {
            finish_model(rec, mf);
            run.seed = cr.seed;
            if (!cr.dt) {
                cr.dt = default_dt(run.model->build());
            }
            action = [&] { do_crossing(run, cr); return kOk; };
        });
    }

    Fig2aArgs f2a;
    {
        auto* sc = app.add_subcommand("fig2a", "PDE and Monte Carlo curves of v(0, tau)");
        auto& rec = recorders["fig2a"];
        rec.option(sc, "n", f2a.n, "penalization level");
        rec.option(sc, "M", f2a.M, "Monte Carlo paths");
        rec.option(sc, "tau_min", f2a.tau_min, "first time");
        rec.option(sc, "tau_max", f2a.tau_max, "last time");
        rec.option(sc, "points", f2a.points, "log-spaced times");
        rec.option(sc, "dt", f2a.dt, "Monte Carlo time step");
        rec.option(sc, "L", f2a.L, "PDE half-width");
        rec.option(sc, "N", f2a.N, "PDE nodes");
        rec.option(sc, "pde_dt", f2a.pde_dt, "PDE time step");
        rec.option(sc, "seed", f2a.seed, "RNG seed");
        rec.option(sc, "g", f2a.g, "observable");
        rec.option(sc, "out", f2a.out, "output prefix; writes <out>_pde.csv and <out>_mc.csv");
        sc->callback([&] {
            run.seed = f2a.seed;
            action = [&] { do_fig2a(run, f2a); return kOk; };
        });
    }

    Fig2bArgs f2b;
    {
        auto* sc = app.add_subcommand("fig2b", "crossing curves for several p plus the limit curve");
        auto& rec = recorders["fig2b"];
        auto& mf = with_model(sc, crossing_defaults());
        rec.option(sc, "b", f2b.b, "threshold");
        rec.option(sc, "T", f2b.T, "horizon");
        rec.option(sc, "M", f2b.M, "Monte Carlo paths per p");
        rec.option(sc, "p_list", f2b.p_list, "comma-separated p values");
        rec.option(sc, "points", f2b.points, "horizons in the T grid");
        rec.option(sc, "dt", f2b.dt, "Monte Carlo time step");
        rec.option(sc, "gamma2", f2b.gamma2, "CLT coefficient squared (computed when omitted)");
        rec.option(sc, "seed", f2b.seed, "RNG seed");
        rec.option(sc, "g", f2b.g, "observable");
        f2b.pde.attach(rec, sc, "pde_");
        rec.option(sc, "out", f2b.out, "output CSV series,T,estimate,stderr");
        sc->callback([&] {
            finish_model(rec, mf);
            run.seed = f2b.seed;
            if (!f2b.dt) {
                f2b.dt = default_dt(run.model->build());
            }
            action = [&] { do_fig2b(run, f2b); return kOk; };
        });
    }

    std::string replay_file;
    std::string replay_out;
    {
        auto* sc = app.add_subcommand("replay", "re-run the invocation recorded in a manifest");
        sc->add_option("manifest", replay_file, "manifest file")->required();
        sc->add_option("--out", replay_out, "write to this path instead of the recorded one");
        sc->callback([&] { action = [&] { return do_replay(replay_file, replay_out, out, err); }; });
    }

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend() - 1);
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }
    for (auto* sc : app.get_subcommands()) {
        run.subcommand = sc->get_name();
        run.args = recorders[run.subcommand].values();
    }
    return action();
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(argv, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ContractViolation& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
}

int run(int argc, const char* const* argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace penosc::cli
