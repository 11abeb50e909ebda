#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqc/ast.hpp"
#include "sqc/table.hpp"

namespace sqc {

struct TableSchema {
    std::vector<std::string> headers;
    std::vector<ColumnType> types;

    static TableSchema of(const Table& t) { return TableSchema{t.headers, t.types}; }
    // Case-insensitive resolution; exact-case match wins on collision.
    std::optional<std::size_t> resolve(std::string_view name) const;
};

// Parses a query of the restricted dialect (see GRAMMAR.md). When a schema
// is supplied, unquoted multi-word column names are resolved against it,
// every column reference is checked to bind to exactly one header, and
// comparisons against text columns are restricted to = / !=.
SqlQuery parse(std::string_view sql, const TableSchema* schema = nullptr);

// Binding checks alone, for ASTs built without a schema.
void bind_query(const SqlQuery& query, const TableSchema& schema);

}  // namespace sqc
