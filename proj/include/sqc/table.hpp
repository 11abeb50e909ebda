#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sqc/cell.hpp"

namespace sqc {

// Immutable after construction; safe to share across threads.
struct Table {
    std::string id;
    std::vector<std::string> headers;     // trimmed, pairwise distinct
    std::vector<ColumnType> types;        // same length as headers
    std::vector<std::vector<CellValue>> rows;

    std::size_t num_cols() const { return headers.size(); }
    std::size_t num_rows() const { return rows.size(); }
    const CellValue& at(std::size_t r, std::size_t c) const { return rows[r][c]; }

    bool operator==(const Table& o) const {
        return headers == o.headers && types == o.types && rows == o.rows;
    }
};

enum class TableFormat { Csv, Json };

// A column is numeric iff every non-empty cell parses as a decimal after
// stripping commas and surrounding whitespace; empty-only columns are text.
std::vector<ColumnType> infer_column_types(const std::vector<std::vector<std::string>>& raw_columns);

// Core constructor shared by all loaders: trims and deduplicates headers,
// infers column types, and converts raw strings to typed cells.
Table table_from_strings(std::string id, std::vector<std::string> raw_headers,
                         const std::vector<std::vector<std::string>>& raw_rows);

Table parse_csv_table(std::string_view text, std::string id);
Table parse_json_table(std::string_view text, std::string fallback_id);

Table load_table(const std::string& path, TableFormat format);
// Format chosen by file extension (.csv / .json).
Table load_table(const std::string& path);
// All *.csv / *.json files in a directory, sorted by filename.
std::vector<Table> load_table_dir(const std::string& dir);

// RFC-4180-style output; load_table(save) round-trips the table exactly.
std::string to_csv(const Table& table);

}  // namespace sqc
