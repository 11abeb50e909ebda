#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sqc/ast.hpp"
#include "sqc/table.hpp"

namespace sqc {

// Execution result: the decoder supervision string is rendered from one of
// these. Only an empty ValueList counts as "empty" (and is discarded by
// the synthesis pipeline); scalars and booleans never are.
struct Denotation {
    enum class Kind { List, Scalar, Boolean };
    Kind kind = Kind::List;
    std::vector<CellValue> values;  // List
    CellValue scalar;               // Scalar
    bool boolean = false;           // Boolean

    static Denotation list(std::vector<CellValue> v) {
        Denotation d;
        d.kind = Kind::List;
        d.values = std::move(v);
        return d;
    }
    static Denotation of_scalar(CellValue v) {
        Denotation d;
        d.kind = Kind::Scalar;
        d.scalar = std::move(v);
        return d;
    }
    static Denotation of_bool(bool b) {
        Denotation d;
        d.kind = Kind::Boolean;
        d.boolean = b;
        return d;
    }

    bool is_empty() const { return kind == Kind::List && values.empty(); }
    bool operator==(const Denotation& o) const;
};

// Evaluates a query over a table. Column references bind by name
// (case-insensitive). Deterministic: ORDER BY ties resolve to the earlier
// row, group order follows first occurrence.
Denotation execute(const SqlQuery& query, const Table& table);

// ValueList joins cell displays with the separator; Scalar renders its
// value; Boolean renders "1" / "0".
std::string render_denotation(const Denotation& d, std::string_view separator = ", ");

}  // namespace sqc
