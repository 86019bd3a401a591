#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace penosc {

/// Shortest-safe text for a double: 17 significant digits, so parsing it back
/// recovers the exact value.
[[nodiscard]] std::string format_double(double value);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(std::span<const std::string> columns);
    void header(std::initializer_list<std::string> columns);
    void row(std::span<const double> values);
    void row(std::initializer_list<double> values);
    /// Leading text cells followed by numeric cells.
    void row(std::span<const std::string> labels, std::span<const double> values);

private:
    std::ostream& out_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] double number(std::size_t row, std::size_t col) const;
};

[[nodiscard]] CsvTable read_csv(std::istream& in);

}  // namespace penosc
