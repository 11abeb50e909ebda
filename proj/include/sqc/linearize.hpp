#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "sqc/table.hpp"

namespace sqc {

struct LinearizedSource {
    std::string text;
    std::size_t sentence_begin = 0, sentence_end = 0;
    std::size_t table_begin = 0, table_end = 0;
};

// Flattened form fed to a seq2seq model, byte-exact wire contract:
//   [HEAD] : h1 | h2 | ... | hN [ROW] 1 : c1 | ... | cN [ROW] 2 : ...
// Single spaces around ":" and "|", 1-based row numbers, no trailing
// whitespace. Cell text containing "|", "[HEAD]" or "[ROW]" is escaped by
// replacing the offending sequence with "/" so the format stays parseable.
std::string flatten_table(const Table& table);

// sentence (trimmed) + " " + flatten_table(table), with spans recorded.
LinearizedSource build_source(std::string_view sentence, const Table& table);

// Longest row-prefix of `table` whose build_source with `sentence` fits in
// max_source_chars. Never drops columns. Throws BudgetError when even the
// header segment does not fit.
Table truncate_rows(const Table& table, std::size_t max_source_chars, std::string_view sentence);

}  // namespace sqc
