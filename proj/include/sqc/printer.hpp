#pragma once

#include <string>
#include <vector>

#include "sqc/ast.hpp"

namespace sqc {

// Deterministic single-spaced rendering: keywords upper-case, string
// literals double-quoted, ASC/DESC always explicit. parse(print_canonical(q))
// is structurally equal to q, with no schema needed (identifiers that would
// not re-lex as a single token are backquoted).
std::string print_canonical(const SqlQuery& query);

// True when `name` must be backquoted to survive a schema-free round trip.
bool identifier_needs_quotes(const std::string& name);

// Depth-first stream of the query's elements: every keyword occurrence
// (ORDER BY and GROUP BY count as two), aggregate-function names,
// comparison/arithmetic operators, column references, literals, and LIMIT
// counts. Parentheses, commas and '*' are not elements. The stream length
// drives difficulty classification.
std::vector<std::string> element_stream(const SqlQuery& query);

}  // namespace sqc
