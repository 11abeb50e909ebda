#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqc/errors.hpp"
#include "sqc/lexer.hpp"
#include "sqc/rng.hpp"

using namespace sqc;

namespace {

std::vector<SqlToken> lex_all(const std::string& sql,
                              const std::vector<std::string>* headers = nullptr) {
    auto tokens = tokenize(sql, headers);
    REQUIRE(!tokens.empty());
    REQUIRE(tokens.back().kind == TokKind::End);
    tokens.pop_back();
    return tokens;
}

std::size_t non_punct_count(const std::vector<SqlToken>& tokens) {
    std::size_t n = 0;
    for (const auto& t : tokens)
        if (t.kind != TokKind::Punct) ++n;
    return n;
}

}  // namespace

TEST_CASE("simple keyword and identifier stream") {
    // [PAPER-backed fixture: Table 8 "SELECT Date"]
    auto tokens = lex_all("SELECT Date");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].kind == TokKind::Keyword);
    CHECK(tokens[0].text == "SELECT");
    CHECK(tokens[1].kind == TokKind::Identifier);
    CHECK(tokens[1].text == "Date");
}

TEST_CASE("six non-punct tokens for the Easy boundary query") {
    auto tokens = lex_all("SELECT Name WHERE Age >= 28");
    CHECK(non_punct_count(tokens) == 6);
    CHECK(tokens[4].kind == TokKind::Operator);
    CHECK(tokens[4].text == ">=");
    CHECK(tokens[5].kind == TokKind::NumberLit);
}

TEST_CASE("unterminated string reports its opening offset") {
    CHECK_THROWS_WITH_AS(tokenize("SELECT 'unterminated"), doctest::Contains("offset 7"),
                         LexError);
}

TEST_CASE("string literals keep interior text verbatim") {
    auto tokens = lex_all("SELECT x WHERE a = 'It''s won'");
    CHECK(tokens.back().text == "It's won");
    CHECK(tokens.back().kind == TokKind::StringLit);
    auto dq = lex_all("SELECT x WHERE a = \"110 m hurdles\"");
    CHECK(dq.back().text == "110 m hurdles");
}

TEST_CASE("keywords are recognized case-insensitively") {
    auto tokens = lex_all("select COUNT ( distinct Area )");
    CHECK(tokens[0].kind == TokKind::Keyword);
    CHECK(tokens[1].kind == TokKind::Keyword);
    CHECK(tokens[3].kind == TokKind::Keyword);  // distinct
    CHECK(tokens[4].kind == TokKind::Identifier);
}

TEST_CASE("operators and punctuation") {
    auto tokens = lex_all("a != 1 , ( b <= 2 ) > < = + - * /");
    std::vector<TokKind> kinds;
    for (const auto& t : tokens) kinds.push_back(t.kind);
    CHECK(tokens[1].text == "!=");
    CHECK(tokens[6].text == "<=");
    CHECK_THROWS_AS(tokenize("a ! b"), LexError);
    CHECK_THROWS_AS(tokenize("a ; b"), LexError);
}

TEST_CASE("multi-word headers merge under longest match") {
    std::vector<std::string> headers = {"Chart Position", "pick #", "Year"};
    auto tokens = lex_all("SELECT MAX(Chart Position) WHERE pick # > 5", &headers);
    bool found_chart = false, found_pick = false;
    for (const auto& t : tokens) {
        if (t.kind == TokKind::Identifier && t.text == "Chart Position") found_chart = true;
        if (t.kind == TokKind::Identifier && t.text == "pick #") found_pick = true;
    }
    CHECK(found_chart);
    CHECK(found_pick);
}

TEST_CASE("longest match wins over a shorter header") {
    std::vector<std::string> headers = {"Peak", "Peak Chart Positions AUS"};
    auto tokens = lex_all("SELECT Peak Chart Positions AUS", &headers);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[1].text == "Peak Chart Positions AUS");
}

TEST_CASE("merging can absorb keywords and numbers mid-name") {
    std::vector<std::string> headers = {"2013 results", "Date Order"};
    auto tokens = lex_all("SELECT 2013 results WHERE Date Order = 'x'", &headers);
    CHECK(tokens[1].text == "2013 results");
    CHECK(tokens[1].kind == TokKind::Identifier);
    CHECK(tokens[3].text == "Date Order");
}

TEST_CASE("a lone number never merges into an identifier") {
    std::vector<std::string> headers = {"1986"};
    auto tokens = lex_all("SELECT x WHERE y = 1986", &headers);
    CHECK(tokens.back().kind == TokKind::NumberLit);
}

TEST_CASE("backquoted identifiers") {
    auto tokens = lex_all("SELECT `pick #` WHERE `a``b` = 1");
    CHECK(tokens[1].kind == TokKind::Identifier);
    CHECK(tokens[1].text == "pick #");
    CHECK(tokens[3].text == "a`b");
    CHECK_THROWS_AS(tokenize("SELECT `unclosed"), LexError);
}

TEST_CASE("token concatenation reproduces the input up to whitespace/quotes") {
    std::string sql = "SELECT COUNT(*) WHERE Result = 'won' AND Year > 1987";
    auto tokens = lex_all(sql);
    std::string joined;
    for (const auto& t : tokens) {
        if (!joined.empty()) joined += ' ';
        joined += t.text;
    }
    CHECK(joined == "SELECT COUNT ( * ) WHERE Result = won AND Year > 1987");
}

TEST_CASE("property: tokenizer is total — random bytes lex or throw LexError") {
    Rng rng(99);
    for (int iter = 0; iter < 2000; ++iter) {
        std::string s;
        std::size_t len = rng.below(40);
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(static_cast<char>(rng.below(96) + 32));  // printable ASCII
        try {
            (void)tokenize(s);
        } catch (const LexError&) {
            // acceptable outcome
        }
    }
    // also raw unprintable bytes
    for (int iter = 0; iter < 500; ++iter) {
        std::string s;
        std::size_t len = rng.below(24);
        for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(rng.below(256)));
        try {
            (void)tokenize(s);
        } catch (const LexError&) {
        }
    }
}
