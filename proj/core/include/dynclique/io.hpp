#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dynclique {

using CellValue = std::variant<std::int64_t, double, std::string>;

/** Rectangular result set; rows keep a deterministic order chosen upstream. */
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<CellValue>> rows;

    bool operator==(const ResultTable&) const = default;
};

/** Doubles rendered with 17 significant digits (round-trip exact). */
std::string format_double(double value);

/** CSV with a header row; cells quoted only when needed. */
void write_csv(const ResultTable& table, std::ostream& out);

/** Single JSON document: {"schema_version": 1, "columns": [...], "rows": [[...]]}. */
void write_json(const ResultTable& table, std::ostream& out, int schema_version = 1);

/** Inverse of write_json; throws std::runtime_error on malformed input. */
ResultTable read_json(std::istream& in);

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(const std::string& name);

/** Writes the table in the chosen format, creating parent directories. */
void write_table(const ResultTable& table, const std::filesystem::path& path, OutputFormat format);

}  // namespace dynclique
