#include "cqed/table.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cqed {

void ResultTable::add_column(std::string name, std::vector<double> values) {
    Column col;
    col.name = std::move(name);
    col.numbers = std::move(values);
    columns.push_back(std::move(col));
}

void ResultTable::add_text_column(std::string name, std::vector<std::string> values) {
    Column col;
    col.name = std::move(name);
    col.labels = std::move(values);
    columns.push_back(std::move(col));
}

const Column& ResultTable::column(const std::string& name) const {
    for (const Column& col : columns) {
        if (col.name == name) return col;
    }
    throw DomainError("no column named '" + name + "'");
}

bool ResultTable::has_column(const std::string& name) const {
    return std::any_of(columns.begin(), columns.end(),
                       [&](const Column& col) { return col.name == name; });
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
    for (auto& [k, v] : metadata) {
        if (k == key) {
            v = value;
            return;
        }
    }
    metadata.emplace_back(key, value);
}

void ResultTable::set_meta(const std::string& key, double value) { set_meta(key, format_double(value)); }

void ResultTable::set_meta(const std::string& key, std::uint64_t value) {
    set_meta(key, std::to_string(value));
}

void ResultTable::set_meta(const std::string& key, long long value) {
    set_meta(key, std::to_string(value));
}

std::string ResultTable::meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    throw DomainError("no metadata key '" + key + "'");
}

void ResultTable::check_rectangular() const {
    const std::size_t n = rows();
    for (const Column& col : columns) {
        if (col.size() != n) {
            throw DimensionError("column '" + col.name + "' has " + std::to_string(col.size()) +
                                 " rows, expected " + std::to_string(n));
        }
    }
}

std::string format_double(double value) {
    char buf[40];
    // 17 significant digits round-trip any IEEE double.
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (in_quotes) {
            if (c == '"') {
                if (k + 1 < line.size() && line[k + 1] == '"') {
                    current += '"';
                    ++k;
                } else {
                    in_quotes = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0';
}

}  // namespace

std::string to_csv(const ResultTable& table) {
    table.check_rectangular();
    std::ostringstream out;
    for (const auto& [key, value] : table.metadata) {
        out << "# " << key << " = " << value << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << csv_field(table.columns[c].name);
    }
    out << "\n";
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out << ',';
            const Column& col = table.columns[c];
            out << (col.is_text() ? csv_field(col.labels[r]) : format_double(col.numbers[r]));
        }
        out << "\n";
    }
    return out.str();
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << to_csv(table);
    if (!file) throw Error("failed writing '" + path + "'");
}

ResultTable read_csv_string(const std::string& text) {
    ResultTable table;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::vector<std::vector<std::string>> raw_columns;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string body = line.substr(1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                auto trim = [](std::string s) {
                    const auto b = s.find_first_not_of(" \t");
                    const auto e = s.find_last_not_of(" \t");
                    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
                };
                table.metadata.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
            }
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (!have_header) {
            for (const std::string& name : fields) {
                Column col;
                col.name = name;
                table.columns.push_back(col);
            }
            raw_columns.resize(fields.size());
            have_header = true;
            continue;
        }
        if (fields.size() != table.columns.size()) {
            throw Error("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(table.columns.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) raw_columns[c].push_back(fields[c]);
    }
    // A column becomes numeric only if every entry parses as a double.
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        std::vector<double> numbers(raw_columns[c].size());
        bool numeric = true;
        for (std::size_t r = 0; r < raw_columns[c].size() && numeric; ++r) {
            numeric = parse_double(raw_columns[c][r], numbers[r]);
        }
        if (numeric && !raw_columns[c].empty()) {
            table.columns[c].numbers = std::move(numbers);
        } else {
            table.columns[c].labels = std::move(raw_columns[c]);
        }
    }
    return table;
}

ResultTable read_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return read_csv_string(buf.str());
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return fnv1a64(buf.str());
}

}  // namespace cqed
