#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqc/errors.hpp"
#include "sqc/rng.hpp"
#include "sqc/table.hpp"
#include "support/fixtures.hpp"
#include "support/tablegen.hpp"

using namespace sqc;

TEST_CASE("decimal parsing and rendering") {
    CHECK(Decimal::parse("2000")->str() == "2000");
    CHECK(Decimal::parse("110.673")->str() == "110.673");
    CHECK(Decimal::parse("-5")->str() == "-5");
    CHECK(Decimal::parse("0.50")->str() == "0.5");
    CHECK(Decimal::parse("007")->str() == "7");
    CHECK(!Decimal::parse("2k"));
    CHECK(!Decimal::parse(""));
    CHECK(!Decimal::parse("1.2.3"));
    CHECK(!Decimal::parse("1e5"));

    CHECK(Decimal::parse_lenient(" 2,000 ")->str() == "2000");
    CHECK(Decimal::parse_lenient("1,234,567.25")->str() == "1234567.25");
    CHECK(!Decimal::parse_lenient("12,34"));   // bad grouping
    CHECK(!Decimal::parse_lenient("1,2"));
    CHECK(!Decimal::parse_lenient("1.2,3"));

    CHECK(!Decimal::parse("2,000"));  // strict parse rejects commas
    CHECK(Decimal::parse_lenient("2,000") == Decimal::from_int(2000));
}

TEST_CASE("decimal arithmetic is exact") {
    Decimal a = *Decimal::parse("0.1"), b = *Decimal::parse("0.2");
    CHECK(a.add(b).str() == "0.3");
    CHECK(Decimal::from_int(1990).sub(Decimal::from_int(1986)).str() == "4");
    CHECK(Decimal::parse("2.5")->mul(*Decimal::parse("4")).str() == "10");
    CHECK(Decimal::from_double(4.0 / 3.0).str() == "1.3333333333333333");
    CHECK(Decimal::from_int(2).compare(*Decimal::parse("2.0")) == 0);
    CHECK(Decimal::parse("-1.5")->compare(Decimal::from_int(0)) < 0);
}

TEST_CASE("integer magnitudes below 2^53 stay exact") {
    std::int64_t big = (1LL << 53) - 1;
    CHECK(Decimal::parse(std::to_string(big))->str() == std::to_string(big));
    CHECK(Decimal::from_int(big).add(Decimal::from_int(0)).str() == std::to_string(big));
}

TEST_CASE("column type inference") {
    // [DERIVED] "1,200", "3", "" -> NumberCol per the stated rule
    CHECK(infer_column_types({{"1,200", "3", ""}}) ==
          std::vector<ColumnType>{ColumnType::Number});
    CHECK(infer_column_types({{"won", "lost"}}) == std::vector<ColumnType>{ColumnType::Text});
    CHECK(infer_column_types({{}}) == std::vector<ColumnType>{ColumnType::Text});
    CHECK(infer_column_types({{"", "  "}}) == std::vector<ColumnType>{ColumnType::Text});
    CHECK(infer_column_types({{"2k", "5"}}) == std::vector<ColumnType>{ColumnType::Text});
}

TEST_CASE("cell display") {
    CHECK(CellValue::number(Decimal::from_int(2000)).display() == "2000");
    CHECK(CellValue::number(*Decimal::parse("110.673")).display() == "110.673");
    CHECK(CellValue::of_text("won").display() == "won");
    CHECK(CellValue::empty().display() == "");
}

TEST_CASE("cell total order") {
    CellValue e = CellValue::empty();
    CellValue n = CellValue::number(Decimal::from_int(5));
    CellValue t = CellValue::of_text("abc");
    CHECK(compare_cells(e, n) < 0);
    CHECK(compare_cells(e, t) < 0);
    CHECK(compare_cells(n, t) < 0);
    CHECK(compare_cells(CellValue::of_text("York"), CellValue::of_text("york")) == 0);
    CHECK(compare_cells(CellValue::of_text("apple"), CellValue::of_text("Banana")) < 0);
    CHECK(compare_cells(CellValue::number(Decimal::from_int(2)),
                        CellValue::number(Decimal::from_int(10))) < 0);
}

TEST_CASE("csv loading: the demo fixture") {
    // [DERIVED] typing rule applied by hand to the example CSV
    Table t = parse_csv_table("Year,Result\n1986,won\n1988,won\n1990,lost", "demo");
    CHECK(t.num_cols() == 2);
    CHECK(t.num_rows() == 3);
    CHECK(t.types == std::vector<ColumnType>{ColumnType::Number, ColumnType::Text});
    CHECK(t.at(0, 0) == CellValue::number(Decimal::from_int(1986)));
    CHECK(t.at(2, 1) == CellValue::of_text("lost"));
}

TEST_CASE("csv loading: header-only file is a valid empty relation") {
    Table t = parse_csv_table("Year,Result\n", "empty");
    CHECK(t.num_rows() == 0);
    CHECK(t.num_cols() == 2);
}

TEST_CASE("csv loading: ragged row names the offending row") {
    CHECK_THROWS_WITH_AS(parse_csv_table("a,b\n1,2,3\n", "bad"),
                         doctest::Contains("row 1"), FormatError);
}

TEST_CASE("csv quoting round trip") {
    Table t = table_from_strings(
        "q", {"name", "note"},
        {{"a,b", "said \"hi\""}, {" padded ", "line\nbreak"}, {"", "plain"}});
    Table back = parse_csv_table(to_csv(t), "q");
    CHECK(back == t);
}

TEST_CASE("duplicate headers get ordinal suffixes") {
    Table t = table_from_strings("d", {"Year", "year", "Year"}, {});
    CHECK(t.headers == std::vector<std::string>{"Year", "year_2", "Year_3"});
}

TEST_CASE("empty header is rejected") {
    CHECK_THROWS_AS(parse_csv_table(" ,b\n", "bad"), FormatError);
}

TEST_CASE("json loading") {
    Table t = parse_json_table(
        R"({"id": "j1", "header": ["Year", "Result"], "rows": [["1986", "won"], ["", "lost"]]})",
        "fallback");
    CHECK(t.id == "j1");
    CHECK(t.types[0] == ColumnType::Number);
    CHECK(t.at(1, 0).is_empty());
    CHECK_THROWS_AS(parse_json_table("{\"header\": [\"a\"]}", "x"), FormatError);
    CHECK_THROWS_WITH_AS(parse_json_table(R"({"header": ["a"], "rows": ["nope"]})", "x"),
                         doctest::Contains("row 1"), FormatError);
    CHECK_THROWS_AS(parse_json_table("not json", "x"), FormatError);
}

TEST_CASE("property: serialize/load round trip on random tables") {
    auto tables = testing::generate_tables(7, 40);
    for (const auto& t : tables) {
        Table back = parse_csv_table(to_csv(t), t.id);
        CHECK(back == t);
    }
}

TEST_CASE("property: typing is idempotent on displayed cells") {
    auto tables = testing::generate_tables(11, 40);
    for (const auto& t : tables) {
        std::vector<std::vector<std::string>> columns(t.num_cols());
        for (std::size_t c = 0; c < t.num_cols(); ++c)
            for (std::size_t r = 0; r < t.num_rows(); ++r)
                columns[c].push_back(t.at(r, c).display());
        CHECK(infer_column_types(columns) == t.types);
    }
}

TEST_CASE("property: row and column order are preserved") {
    Table t = testing::t_demo();
    std::string csv = to_csv(t);
    Table back = parse_csv_table(csv, t.id);
    for (std::size_t r = 0; r < t.num_rows(); ++r)
        for (std::size_t c = 0; c < t.num_cols(); ++c) CHECK(back.at(r, c) == t.at(r, c));
}
