#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "penosc/model.hpp"

namespace penosc {

/// Flat key=value model configuration. Missing keys keep these defaults;
/// unknown keys and malformed values throw UsageError.
///
///   model      epp | fp | op          (fp)
///   n          penalization level     (100)
///   cb         damping C_b            (1)
///   potential  zero | quadratic       (quadratic)
///   k          quadratic stiffness    (1)
///   noise      white | ou | kt        (white)
///   theta_v    OU stiffness           (1)
///   beta       OU inverse temperature (2; unit diffusion requires 2)
///   kt_k       Kanai-Tajimi stiffness (1)
///   kt_gamma0  Kanai-Tajimi damping   (1)
struct ModelConfig {
    std::string model = "fp";
    long n = 100;
    double cb = 1.0;
    std::string potential = "quadratic";
    double k = 1.0;
    std::string noise = "white";
    double theta_v = 1.0;
    double beta = 2.0;
    double kt_k = 1.0;
    double kt_gamma0 = 1.0;

    [[nodiscard]] static const std::vector<std::string>& keys();

    void set(const std::string& key, const std::string& value);
    [[nodiscard]] std::string get(const std::string& key) const;
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;

    [[nodiscard]] ModelSpec build() const;
};

/// Parses `key=value` lines; blank lines and lines starting with '#' are skipped.
[[nodiscard]] ModelConfig parse_model_config(std::istream& in, ModelConfig base = {});
[[nodiscard]] ModelConfig load_model_config(const std::filesystem::path& path, ModelConfig base = {});

}  // namespace penosc
