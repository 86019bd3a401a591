#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace penosc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Ordered key=value sidecar written next to every output file.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void set(const std::string& key, const std::string& value);
    [[nodiscard]] const std::string* get(const std::string& key) const;

    void write(const std::filesystem::path& path) const;
    static Manifest read(const std::filesystem::path& path);
};

/// "<output>.manifest"
[[nodiscard]] std::filesystem::path manifest_path(const std::filesystem::path& output);

}  // namespace penosc::cli
