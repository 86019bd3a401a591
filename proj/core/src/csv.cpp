#include "penosc/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "penosc/error.hpp"

namespace penosc {

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

void CsvWriter::header(std::span<const std::string> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out_ << (i ? "," : "") << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::header(std::initializer_list<std::string> columns) {
    header(std::span<const std::string>(columns.begin(), columns.size()));
}

void CsvWriter::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ << (i ? "," : "") << format_double(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    row(std::span<const double>(values.begin(), values.size()));
}

void CsvWriter::row(std::span<const std::string> labels, std::span<const double> values) {
    bool first = true;
    for (const auto& l : labels) {
        out_ << (first ? "" : ",") << l;
        first = false;
    }
    for (double v : values) {
        out_ << (first ? "" : ",") << format_double(v);
        first = false;
    }
    out_ << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw ContractViolation("no CSV column '" + name + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& s = rows.at(row).at(col);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ContractViolation("CSV cell is not a number: '" + s + "'");
    }
    return v;
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    if (std::getline(in, line)) {
        t.columns = split(line);
    }
    while (std::getline(in, line)) {
        if (!line.empty()) {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

}  // namespace penosc
