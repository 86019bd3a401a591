#include "penosc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "penosc/csv.hpp"
#include "penosc/error.hpp"

namespace penosc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw UsageError("bad value for '" + key + "': '" + text + "'");
    }
    return v;
}

long to_long(const std::string& key, const std::string& text) {
    long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw UsageError("bad integer for '" + key + "': '" + text + "'");
    }
    return v;
}

void require_positive(const char* key, double v) {
    if (!(v > 0.0)) {
        throw UsageError(std::string(key) + " must be positive");
    }
}

}  // namespace

const std::vector<std::string>& ModelConfig::keys() {
    static const std::vector<std::string> k{"model", "n", "cb", "potential", "k",
                                            "noise", "theta_v", "beta", "kt_k", "kt_gamma0"};
    return k;
}

void ModelConfig::set(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "model") {
        model = value;
    } else if (key == "n") {
        n = to_long(key, value);
    } else if (key == "cb") {
        cb = to_double(key, value);
    } else if (key == "potential") {
        potential = value;
    } else if (key == "k") {
        k = to_double(key, value);
    } else if (key == "noise") {
        noise = value;
    } else if (key == "theta_v") {
        theta_v = to_double(key, value);
    } else if (key == "beta") {
        beta = to_double(key, value);
    } else if (key == "kt_k") {
        kt_k = to_double(key, value);
    } else if (key == "kt_gamma0") {
        kt_gamma0 = to_double(key, value);
    } else {
        throw UsageError("unknown configuration key '" + key + "'");
    }
}

std::string ModelConfig::get(const std::string& key) const {
    for (const auto& [k_, v] : entries()) {
        if (k_ == key) {
            return v;
        }
    }
    throw UsageError("unknown configuration key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> ModelConfig::entries() const {
    return {{"model", model},
            {"n", std::to_string(n)},
            {"cb", format_double(cb)},
            {"potential", potential},
            {"k", format_double(k)},
            {"noise", noise},
            {"theta_v", format_double(theta_v)},
            {"beta", format_double(beta)},
            {"kt_k", format_double(kt_k)},
            {"kt_gamma0", format_double(kt_gamma0)}};
}

ModelSpec ModelConfig::build() const {
    ModelSpec spec;
    spec.kind = parse_model_kind(model);
    if (n < 1) {
        throw UsageError("n must be >= 1");
    }
    spec.n = PenalizationLevel(n);
    require_positive("cb", cb);
    spec.damping = cb;
    if (potential == "zero") {
        spec.potential = Potential::zero();
    } else if (potential == "quadratic") {
        require_positive("k", k);
        spec.potential = Potential::quadratic(k);
    } else {
        throw UsageError("unknown potential '" + potential + "' (expected zero or quadratic)");
    }
    if (noise == "white") {
        spec.noise = WhiteNoise{};
    } else if (noise == "ou") {
        require_positive("theta_v", theta_v);
        require_positive("beta", beta);
        if (beta != 2.0) {
            throw UsageError("beta must be 2: the simulated noise has unit diffusion, sigma = sqrt(2/beta)");
        }
        spec.noise = OverdampedNoise::ornstein_uhlenbeck(theta_v, beta);
    } else if (noise == "kt") {
        require_positive("kt_k", kt_k);
        require_positive("kt_gamma0", kt_gamma0);
        spec.noise = HamiltonianNoise::kanai_tajimi(kt_k, kt_gamma0);
    } else {
        throw UsageError("unknown noise '" + noise + "' (expected white, ou or kt)");
    }
    return spec;
}

ModelConfig parse_model_config(std::istream& in, ModelConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        base.set(trim(t.substr(0, eq)), t.substr(eq + 1));
    }
    return base;
}

ModelConfig load_model_config(const std::filesystem::path& path, ModelConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file " + path.string());
    }
    return parse_model_config(in, std::move(base));
}

}  // namespace penosc
