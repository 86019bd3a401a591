#include "manifest.hpp"

#include <fstream>

#include "penosc/error.hpp"

namespace penosc::cli {

void Manifest::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries.emplace_back(key, value);
}

const std::string* Manifest::get(const std::string& key) const {
    for (const auto& [k, v] : entries) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

void Manifest::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) {
        throw DomainError("cannot write manifest " + path.string());
    }
    for (const auto& [k, v] : entries) {
        out << k << '=' << v << '\n';
    }
}

Manifest Manifest::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open manifest " + path.string());
    }
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("malformed manifest line: " + line);
        }
        m.entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
    return output.string() + ".manifest";
}

}  // namespace penosc::cli
