#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sqc/ast.hpp"
#include "sqc/lexer.hpp"
#include "sqc/rng.hpp"
#include "sqc/table.hpp"

namespace sqc {

// Typed template slot. Column slots ({num1}, {text1}, {col1}) receive
// pairwise-distinct columns; {valK:<colslot>} receives a cell value from
// the column bound to the referenced slot; {intK} receives an integer
// from [1, row count].
struct Slot {
    enum class Kind { NumCol, TextCol, AnyCol, Val, IntLit };
    Kind kind = Kind::AnyCol;
    int index = 0;            // 1-based within its family
    int of_column_slot = -1;  // Val only: position in QueryTemplate::slots

    bool is_column() const {
        return kind == Kind::NumCol || kind == Kind::TextCol || kind == Kind::AnyCol;
    }
    bool operator==(const Slot&) const = default;
};

struct TemplateToken {
    bool is_slot = false;
    SqlToken token;      // valid iff !is_slot
    int slot_index = -1;  // valid iff is_slot
};

struct QueryTemplate {
    std::string template_id;
    std::string text;  // original template line
    std::vector<TemplateToken> skeleton;
    std::vector<Slot> slots;  // first-occurrence order
};

// Slot syntax: {num1} {text1} {col1} {int1} {val1:text1}. Validates slot
// references, per-family index contiguity, and that the skeleton parses
// once slots are substituted.
QueryTemplate parse_template(std::string_view text, std::string template_id = "");

// One template per line; blank lines and lines starting with '#' ignored.
// Ids are assigned as "t1", "t2", ... in file order.
std::vector<QueryTemplate> load_templates(const std::string& path);

// True iff instantiate() is guaranteed to succeed: enough distinct columns
// of each family (value-fed slots need a column with at least one
// non-empty cell) and at least one row when a Val or Int slot is present.
bool compatible(const QueryTemplate& tpl, const Table& table);

// Uniform instantiation: distinct columns without replacement per slot,
// cell values uniform over the bound column's non-empty cells, integers
// uniform over [1, M]. Deterministic for a given rng state; the result
// always parses and binds against the table.
SqlQuery instantiate(const QueryTemplate& tpl, const Table& table, Rng& rng);

}  // namespace sqc
