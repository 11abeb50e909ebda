#include "sqc/lexer.hpp"

#include <algorithm>
#include <array>

#include "sqc/cell.hpp"
#include "sqc/errors.hpp"

namespace sqc {

namespace {

constexpr std::array<std::string_view, 18> kKeywords = {
    "SELECT", "WHERE", "AND", "OR",    "NOT",  "IN",    "GROUP", "BY",  "ORDER",
    "ASC",    "DESC",  "LIMIT", "DISTINCT", "COUNT", "SUM", "AVG", "MIN", "MAX"};

bool is_word_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '#' || c == '.';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    return out;
}

}  // namespace

bool is_keyword_word(std::string_view word) {
    std::string u = upper(word);
    return std::find(kKeywords.begin(), kKeywords.end(), u) != kKeywords.end();
}

bool SqlToken::is_keyword(std::string_view kw) const {
    return kind == TokKind::Keyword && upper(text) == kw;
}

namespace {

std::vector<SqlToken> lex(std::string_view sql) {
    std::vector<SqlToken> tokens;
    std::size_t i = 0;
    const std::size_t n = sql.size();
    auto push = [&](TokKind k, std::string text, std::size_t b, std::size_t e) {
        tokens.push_back(SqlToken{k, std::move(text), b, e});
    };
    while (i < n) {
        char c = sql[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (c == '\'' || c == '"') {
            char quote = c;
            std::string text;
            ++i;
            bool closed = false;
            while (i < n) {
                if (sql[i] == quote) {
                    if (i + 1 < n && sql[i + 1] == quote) {  // doubled quote escape
                        text.push_back(quote);
                        i += 2;
                    } else {
                        ++i;
                        closed = true;
                        break;
                    }
                } else {
                    text.push_back(sql[i++]);
                }
            }
            if (!closed)
                throw LexError("unterminated string literal at offset " + std::to_string(start));
            push(TokKind::StringLit, std::move(text), start, i);
        } else if (c == '`') {
            std::string text;
            ++i;
            bool closed = false;
            while (i < n) {
                if (sql[i] == '`') {
                    if (i + 1 < n && sql[i + 1] == '`') {
                        text.push_back('`');
                        i += 2;
                    } else {
                        ++i;
                        closed = true;
                        break;
                    }
                } else {
                    text.push_back(sql[i++]);
                }
            }
            if (!closed)
                throw LexError("unterminated quoted identifier at offset " + std::to_string(start));
            if (text.empty())
                throw LexError("empty quoted identifier at offset " + std::to_string(start));
            push(TokKind::Identifier, std::move(text), start, i);
        } else if (is_word_char(c)) {
            while (i < n && is_word_char(sql[i])) ++i;
            std::string word(sql.substr(start, i - start));
            if (Decimal::parse(word))
                push(TokKind::NumberLit, std::move(word), start, i);
            else if (is_keyword_word(word))
                push(TokKind::Keyword, std::move(word), start, i);
            else
                push(TokKind::Identifier, std::move(word), start, i);
        } else if (c == '!' ) {
            if (i + 1 < n && sql[i + 1] == '=') {
                push(TokKind::Operator, "!=", start, i + 2);
                i += 2;
            } else {
                throw LexError("illegal character '!' at offset " + std::to_string(start));
            }
        } else if (c == '>' || c == '<') {
            if (i + 1 < n && sql[i + 1] == '=') {
                push(TokKind::Operator, std::string(1, c) + "=", start, i + 2);
                i += 2;
            } else {
                push(TokKind::Operator, std::string(1, c), start, i + 1);
                ++i;
            }
        } else if (c == '=' || c == '+' || c == '-' || c == '*' || c == '/') {
            push(TokKind::Operator, std::string(1, c), start, i + 1);
            ++i;
        } else if (c == '(' || c == ')' || c == ',') {
            push(TokKind::Punct, std::string(1, c), start, i + 1);
            ++i;
        } else {
            throw LexError(std::string("illegal character '") + c + "' at offset " +
                           std::to_string(start));
        }
    }
    push(TokKind::End, "", n, n);
    return tokens;
}

// Longest-match resolution of unquoted multi-word column names against a
// supplied header list. A merge span may contain word tokens (identifiers,
// numbers, keywords); it must start at an identifier, or at a number only
// when the match spans at least two tokens, and never at a keyword —
// headers that collide with keywords must be backquoted.
std::vector<SqlToken> merge_headers(std::vector<SqlToken> tokens,
                                    const std::vector<std::string>& headers) {
    std::vector<std::string> folded;
    std::size_t max_words = 1;
    folded.reserve(headers.size());
    for (const auto& h : headers) {
        folded.push_back(fold_case(collapse_ws(h)));
        std::size_t words = 1 + static_cast<std::size_t>(
                                    std::count(h.begin(), h.end(), ' '));
        max_words = std::max(max_words, words);
    }
    auto is_word_tok = [](const SqlToken& t) {
        return t.kind == TokKind::Identifier || t.kind == TokKind::NumberLit ||
               t.kind == TokKind::Keyword;
    };
    std::vector<SqlToken> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const SqlToken& t = tokens[i];
        bool can_start = t.kind == TokKind::Identifier ||
                         (t.kind == TokKind::NumberLit && i + 1 < tokens.size() &&
                          is_word_tok(tokens[i + 1]));
        if (!can_start) {
            out.push_back(t);
            ++i;
            continue;
        }
        std::size_t best_len = 0;
        std::string joined;
        std::string best_text;
        for (std::size_t j = i; j < tokens.size() && j - i < max_words; ++j) {
            if (!is_word_tok(tokens[j])) break;
            if (j > i) joined += ' ';
            joined += tokens[j].text;
            std::string f = fold_case(joined);
            if (std::find(folded.begin(), folded.end(), f) != folded.end()) {
                std::size_t len = j - i + 1;
                if (t.kind == TokKind::NumberLit && len < 2) continue;
                best_len = len;
                best_text = joined;
            }
        }
        if (best_len == 0) {
            out.push_back(t);
            ++i;
        } else {
            out.push_back(SqlToken{TokKind::Identifier, best_text, t.begin,
                                   tokens[i + best_len - 1].end});
            i += best_len;
        }
    }
    return out;
}

}  // namespace

std::vector<SqlToken> tokenize(std::string_view sql, const std::vector<std::string>* headers) {
    auto tokens = lex(sql);
    if (headers && !headers->empty()) tokens = merge_headers(std::move(tokens), *headers);
    return tokens;
}

}  // namespace sqc
