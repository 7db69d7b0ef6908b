// io.cpp: Table writers

#include "spinbath/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace spinbath::io {

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("format must be 'csv' or 'json', got '" + name + "'");
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_table(std::ostream& out, const Table& table, const Metadata& meta, Format format) {
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw std::logic_error("write_table: row width does not match the header");

    if (format == Format::Csv) {
        for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            out << (i ? "," : "") << table.columns[i];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
            out << '\n';
        }
        return;
    }

    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : meta) doc["metadata"][key] = value;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (double x : row) {
            if (std::isfinite(x)) r.push_back(x);
            else r.push_back(format_double(x));
        }
        doc["rows"].push_back(std::move(r));
    }
    out << doc.dump(2) << '\n';
}

void write_table(const std::string& path, const Table& table, const Metadata& meta, Format format) {
    if (path.empty() || path == "-") {
        write_table(std::cout, table, meta, format);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    write_table(file, table, meta, format);
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace spinbath::io
