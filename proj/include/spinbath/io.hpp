// io.hpp: CSV / JSON emission for tables with run metadata

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spinbath::io {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);  // "csv" | "json"

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// 17 significant digits, shortest round-trip spelling not attempted.
std::string format_double(double x);

// CSV: "# key: value" lines, a header row, then comma-separated rows.
// JSON: {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.
void write_table(std::ostream& out, const Table& table, const Metadata& meta, Format format);

// Writes to path, or to stdout when path is empty or "-".
void write_table(const std::string& path, const Table& table, const Metadata& meta, Format format);

} // namespace spinbath::io
