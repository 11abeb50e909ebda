#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sqc {

enum class TokKind { Keyword, Identifier, NumberLit, StringLit, Operator, Punct, End };

struct SqlToken {
    TokKind kind = TokKind::End;
    std::string text;  // keywords keep source casing; string literals keep interior text
    std::size_t begin = 0, end = 0;  // character offsets into the input

    bool is_keyword(std::string_view upper) const;
};

// Closed keyword set of the dialect, matched case-insensitively.
bool is_keyword_word(std::string_view word);

// Tokenizes a query. When a header list is supplied, consecutive word
// tokens whose space-joined text matches a header (longest match, case-
// insensitive) are merged into a single Identifier, which is how unquoted
// multi-word column names like "Chart Position" are resolved.
// The returned vector always ends with a single End token.
std::vector<SqlToken> tokenize(std::string_view sql,
                               const std::vector<std::string>* headers = nullptr);

}  // namespace sqc
