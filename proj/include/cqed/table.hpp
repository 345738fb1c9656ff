#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cqed/errors.hpp"

namespace cqed {

// One named column, either numeric or text (e.g. measured levels).
struct Column {
    std::string name;
    std::vector<double> numbers;
    std::vector<std::string> labels;

    bool is_text() const { return !labels.empty(); }
    std::size_t size() const { return is_text() ? labels.size() : numbers.size(); }
};

// Tabular experiment output: equal-length columns plus ordered key=value
// metadata (config echo, fit results, summary statistics).
struct ResultTable {
    std::vector<Column> columns;
    std::vector<std::pair<std::string, std::string>> metadata;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    void add_column(std::string name, std::vector<double> values);
    void add_text_column(std::string name, std::vector<std::string> values);
    const Column& column(const std::string& name) const;
    bool has_column(const std::string& name) const;

    void set_meta(const std::string& key, const std::string& value);
    void set_meta(const std::string& key, double value);
    void set_meta(const std::string& key, std::uint64_t value);
    void set_meta(const std::string& key, long long value);
    std::string meta(const std::string& key) const;

    void check_rectangular() const;
};

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double value);

// CSV with '#' metadata lines, then a header row, then data rows. Values
// are written with full round-trip precision so re-parsing is bit-exact.
std::string to_csv(const ResultTable& table);
void write_csv(const ResultTable& table, const std::string& path);
ResultTable read_csv_string(const std::string& text);
ResultTable read_csv(const std::string& path);

// FNV-1a 64-bit, used for output checksums in the run manifest.
std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);

}  // namespace cqed
