#include "sqc/table.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqc/errors.hpp"

namespace sqc {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return ss.str();
}

// RFC-4180 reader: quoted fields, "" escapes, CRLF or LF record breaks,
// newlines allowed inside quoted fields.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false, field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field.push_back(c);
                ++i;
            }
        } else if (c == '"' && field.empty() && !field_started) {
            in_quotes = true;
            field_started = true;
            ++i;
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\n' || (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
            // Blank lines are not records; an empty cell in a one-column
            // table is written as "" by to_csv.
            if (!record.empty() || field_started || !field.empty()) end_record();
            i += c == '\r' ? 2 : 1;
        } else {
            field.push_back(c);
            field_started = true;
            ++i;
        }
    }
    if (in_quotes) throw FormatError("unterminated quoted field at end of input");
    // Final record without trailing newline.
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

std::string csv_escape(const std::string& s) {
    bool needs = s.empty() || s.find_first_of(",\"\r\n") != std::string::npos ||
                 s.front() == ' ' || s.back() == ' ';
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

std::vector<ColumnType> infer_column_types(const std::vector<std::vector<std::string>>& raw_columns) {
    std::vector<ColumnType> types;
    types.reserve(raw_columns.size());
    for (const auto& col : raw_columns) {
        bool any_value = false, all_numeric = true;
        for (const auto& raw : col) {
            std::string t = trim(raw);
            if (t.empty()) continue;
            any_value = true;
            if (!Decimal::parse_lenient(t)) {
                all_numeric = false;
                break;
            }
        }
        types.push_back(any_value && all_numeric ? ColumnType::Number : ColumnType::Text);
    }
    return types;
}

Table table_from_strings(std::string id, std::vector<std::string> raw_headers,
                         const std::vector<std::vector<std::string>>& raw_rows) {
    Table t;
    t.id = std::move(id);
    const std::size_t n = raw_headers.size();
    t.headers.reserve(n);
    std::vector<std::string> seen_folded;
    for (std::size_t c = 0; c < n; ++c) {
        std::string h = trim(raw_headers[c]);
        if (h.empty())
            throw FormatError("empty header name in column " + std::to_string(c + 1));
        // Duplicates (case-insensitive, since binding is case-insensitive)
        // get an ordinal suffix so column references stay unambiguous.
        std::string candidate = h;
        int ordinal = 2;
        auto taken = [&](const std::string& name) {
            std::string f = fold_case(name);
            return std::find(seen_folded.begin(), seen_folded.end(), f) != seen_folded.end();
        };
        while (taken(candidate)) candidate = h + "_" + std::to_string(ordinal++);
        seen_folded.push_back(fold_case(candidate));
        t.headers.push_back(std::move(candidate));
    }

    for (std::size_t r = 0; r < raw_rows.size(); ++r) {
        if (raw_rows[r].size() != n)
            throw FormatError("row " + std::to_string(r + 1) + " has " +
                              std::to_string(raw_rows[r].size()) + " cells, expected " +
                              std::to_string(n));
    }

    std::vector<std::vector<std::string>> columns(n);
    for (const auto& row : raw_rows)
        for (std::size_t c = 0; c < n; ++c) columns[c].push_back(row[c]);
    t.types = infer_column_types(columns);

    t.rows.reserve(raw_rows.size());
    for (const auto& raw : raw_rows) {
        std::vector<CellValue> row;
        row.reserve(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::string trimmed = trim(raw[c]);
            if (trimmed.empty()) {
                row.push_back(CellValue::empty());
            } else if (t.types[c] == ColumnType::Number) {
                row.push_back(CellValue::number(*Decimal::parse_lenient(trimmed)));
            } else {
                row.push_back(CellValue::of_text(raw[c]));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table parse_csv_table(std::string_view text, std::string id) {
    auto records = parse_csv_records(text);
    if (records.empty()) throw FormatError("missing header row");
    std::vector<std::string> headers = records.front();
    std::vector<std::vector<std::string>> rows(records.begin() + 1, records.end());
    return table_from_strings(std::move(id), std::move(headers), rows);
}

Table parse_json_table(std::string_view text, std::string fallback_id) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("header") || !j.contains("rows"))
        throw FormatError("JSON table must be an object with 'header' and 'rows'");
    if (!j["header"].is_array())
        throw FormatError("'header' must be an array of strings");
    std::vector<std::string> headers;
    for (const auto& h : j["header"]) {
        if (!h.is_string()) throw FormatError("'header' must contain only strings");
        headers.push_back(h.get<std::string>());
    }
    if (!j["rows"].is_array()) throw FormatError("'rows' must be an array");
    std::vector<std::vector<std::string>> rows;
    std::size_t r = 0;
    for (const auto& row : j["rows"]) {
        ++r;
        if (!row.is_array())
            throw FormatError("row " + std::to_string(r) + " is not an array");
        std::vector<std::string> cells;
        for (const auto& cell : row) {
            if (cell.is_string()) cells.push_back(cell.get<std::string>());
            else if (cell.is_null()) cells.emplace_back();
            else cells.push_back(cell.dump());
        }
        rows.push_back(std::move(cells));
    }
    std::string id = fallback_id;
    if (j.contains("id") && j["id"].is_string()) id = j["id"].get<std::string>();
    return table_from_strings(std::move(id), std::move(headers), rows);
}

Table load_table(const std::string& path, TableFormat format) {
    std::string text = read_file(path);
    std::string stem = std::filesystem::path(path).stem().string();
    switch (format) {
        case TableFormat::Csv: return parse_csv_table(text, stem);
        case TableFormat::Json: return parse_json_table(text, stem);
    }
    throw FormatError("unknown table format");
}

Table load_table(const std::string& path) {
    auto ext = std::filesystem::path(path).extension().string();
    std::string folded = fold_case(ext);
    if (folded == ".csv") return load_table(path, TableFormat::Csv);
    if (folded == ".json") return load_table(path, TableFormat::Json);
    throw FormatError("cannot infer table format from extension: " + path);
}

std::vector<Table> load_table_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = fold_case(entry.path().extension().string());
        if (ext == ".csv" || ext == ".json") paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<Table> tables;
    tables.reserve(paths.size());
    for (const auto& p : paths) tables.push_back(load_table(p));
    return tables;
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.headers.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(table.headers[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << csv_escape(row[c].display());
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace sqc
