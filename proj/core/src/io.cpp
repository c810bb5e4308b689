#include "dynclique/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace dynclique {

std::string format_double(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("refusing to serialize a non-finite value");
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

std::string csv_escape(const std::string& cell)
{
    if (cell.find_first_of(",\"\n\r") == std::string::npos)
        return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string render_cell(const CellValue& cell)
{
    if (const auto* i = std::get_if<std::int64_t>(&cell))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell))
        return format_double(*d);
    return std::get<std::string>(cell);
}

void json_escape(const std::string& text, std::ostream& out)
{
    out << '"';
    for (char c : text) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\r': out << "\\r"; break;
            case '\t': out << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
                    out << buffer;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out)
{
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0)
            out << ',';
        out << csv_escape(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::invalid_argument("row width differs from header width");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0)
                out << ',';
            out << csv_escape(render_cell(row[c]));
        }
        out << '\n';
    }
}

void write_json(const ResultTable& table, std::ostream& out, int schema_version)
{
    // Hand-rolled writer so doubles keep the 17-significant-digit contract.
    out << "{\"schema_version\":" << schema_version << ",\"columns\":[";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0)
            out << ',';
        json_escape(table.columns[c], out);
    }
    out << "],\"rows\":[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.columns.size())
            throw std::invalid_argument("row width differs from header width");
        if (r > 0)
            out << ',';
        out << '[';
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0)
                out << ',';
            if (const auto* i = std::get_if<std::int64_t>(&row[c]))
                out << *i;
            else if (const auto* d = std::get_if<double>(&row[c]))
                out << format_double(*d);
            else
                json_escape(std::get<std::string>(row[c]), out);
        }
        out << ']';
    }
    out << "]}\n";
}

ResultTable read_json(std::istream& in)
{
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed JSON result document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema_version") || !doc.contains("columns") ||
        !doc.contains("rows"))
        throw std::runtime_error("JSON result document missing required fields");

    ResultTable table;
    for (const auto& column : doc["columns"])
        table.columns.push_back(column.get<std::string>());
    for (const auto& row : doc["rows"]) {
        std::vector<CellValue> cells;
        cells.reserve(row.size());
        for (const auto& cell : row) {
            if (cell.is_number_integer())
                cells.emplace_back(cell.get<std::int64_t>());
            else if (cell.is_number_float())
                cells.emplace_back(cell.get<double>());
            else if (cell.is_string())
                cells.emplace_back(cell.get<std::string>());
            else
                throw std::runtime_error("unsupported cell type in JSON result document");
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

OutputFormat parse_output_format(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    throw std::invalid_argument("output format must be csv or json");
}

void write_table(const ResultTable& table, const std::filesystem::path& path, OutputFormat format)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path.string());
    if (format == OutputFormat::Csv)
        write_csv(table, out);
    else
        write_json(table, out);
    if (!out)
        throw std::runtime_error("failed writing output file: " + path.string());
}

}  // namespace dynclique
