#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "sqc/errors.hpp"
#include "sqc/executor.hpp"
#include "sqc/parser.hpp"
#include "sqc/printer.hpp"
#include "sqc/template.hpp"
#include "support/fixtures.hpp"
#include "support/tablegen.hpp"

using namespace sqc;
using sqc::testing::t_demo;

TEST_CASE("the paper's example template parses with three slots") {
    // [PAPER-backed: "SELECT num_1 WHERE text_1 = val_1"]
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {text1} = {val1:text1}");
    CHECK(tpl.slots.size() == 3);
    CHECK(tpl.slots[0].kind == Slot::Kind::NumCol);
    CHECK(tpl.slots[1].kind == Slot::Kind::TextCol);
    CHECK(tpl.slots[2].kind == Slot::Kind::Val);
    CHECK(tpl.slots[2].of_column_slot == 1);
}

TEST_CASE("dangling val reference") {
    CHECK_THROWS_WITH_AS(parse_template("SELECT {val1:text9}"), doctest::Contains("dangling"),
                         TemplateError);
}

TEST_CASE("superlative template has two slots") {
    QueryTemplate tpl = parse_template("SELECT {col1} ORDER BY {num1} DESC LIMIT 1");
    CHECK(tpl.slots.size() == 2);
}

TEST_CASE("template validation errors") {
    CHECK_THROWS_AS(parse_template("SELECT {bogus1}"), TemplateError);
    CHECK_THROWS_AS(parse_template("SELECT {num}"), TemplateError);       // missing index
    CHECK_THROWS_AS(parse_template("SELECT {num2}"), TemplateError);      // not contiguous
    CHECK_THROWS_AS(parse_template("SELECT {num1} WHERE {unclosed"), TemplateError);
    CHECK_THROWS_AS(parse_template("WHERE {num1}"), TemplateError);       // unparsable skeleton
    CHECK_THROWS_AS(parse_template("SELECT {text1} WHERE {text1} > {val1:text1}"),
                    TemplateError);  // order comparison on a text column
}

TEST_CASE("repeated slot occurrences reuse one slot") {
    QueryTemplate tpl = parse_template("SELECT {text1} WHERE {text1} != {val1:text1}");
    CHECK(tpl.slots.size() == 2);
}

TEST_CASE("compatibility") {
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {text1} = {val1:text1}");
    CHECK(compatible(tpl, t_demo()));  // [DERIVED] T_demo has 2 numeric, 2 text columns

    Table no_numbers = table_from_strings("t", {"a", "b"}, {{"x", "y"}});
    CHECK(!compatible(tpl, no_numbers));

    Table empty_rows = table_from_strings("t", {"a", "b"}, {});
    QueryTemplate with_val = parse_template("SELECT {col1} WHERE {col2} = {val1:col2}");
    CHECK(!compatible(with_val, empty_rows));  // val slot needs a row

    QueryTemplate plain = parse_template("SELECT {col1}");
    CHECK(compatible(plain, empty_rows));

    QueryTemplate two_nums = parse_template("SELECT {num1} WHERE {num2} = {val1:num2}");
    CHECK(compatible(two_nums, t_demo()));
    Table one_num = table_from_strings("t", {"n", "s"}, {{"1", "x"}});
    CHECK(!compatible(two_nums, one_num));
}

TEST_CASE("value-fed any-column slots require values under every sampling path") {
    // text column "e" is empty-only; {col1} must not be assignable to it
    // when {text1} could steal the valued column first.
    Table t = table_from_strings("t", {"s", "e"}, {{"x", ""}, {"y", ""}});
    CHECK(t.types == std::vector<ColumnType>{ColumnType::Text, ColumnType::Text});
    QueryTemplate tpl = parse_template("SELECT {text1} WHERE {col1} = {val1:col1}");
    CHECK(!compatible(tpl, t));
    QueryTemplate safe = parse_template("SELECT {col1} WHERE {text1} = {val1:text1}");
    CHECK(compatible(safe, t));
}

TEST_CASE("instantiation binds and respects slot typing") {
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {text1} = {val1:text1}");
    Table t = t_demo();
    std::set<std::string> seen;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s);
        SqlQuery q = instantiate(tpl, t, rng);
        std::string sql = print_canonical(q);
        seen.insert(sql);
        CHECK_NOTHROW(execute(q, t));  // binds by construction
        // the filler space is finite: projection Year/Pos, filter Result/Driver
        bool proj_ok = sql.rfind("SELECT Year", 0) == 0 || sql.rfind("SELECT Pos", 0) == 0;
        CHECK(proj_ok);
    }
    CHECK(seen.size() > 4);  // several distinct fillings appear
}

TEST_CASE("distinct slots receive distinct columns") {
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {num2} = {val1:num2}");
    Table t = t_demo();  // exactly two numeric columns
    for (std::uint64_t s = 0; s < 64; ++s) {
        Rng rng(s);
        SqlQuery q = instantiate(tpl, t, rng);
        const auto& proj = std::get<ColumnRef>(q.projection[0].node).name;
        const auto& cmp = std::get<Compare>(q.where->node).col.name;
        CHECK(proj != cmp);
    }
}

TEST_CASE("same seed, same query") {
    QueryTemplate tpl = parse_template("SELECT {col1} ORDER BY {num1} DESC LIMIT {int1}");
    Table t = t_demo();
    Rng a(42), b(42);
    CHECK(instantiate(tpl, t, a) == instantiate(tpl, t, b));
    Rng c(43);
    // different seeds usually differ; just require the call succeeds
    CHECK_NOTHROW(instantiate(tpl, t, c));
}

TEST_CASE("int slots stay within the row count") {
    QueryTemplate tpl = parse_template("SELECT {col1} ORDER BY {num1} ASC LIMIT {int1}");
    Table t = t_demo();
    for (std::uint64_t s = 0; s < 64; ++s) {
        Rng rng(s);
        SqlQuery q = instantiate(tpl, t, rng);
        CHECK(*q.limit >= 1);
        CHECK(*q.limit <= static_cast<std::int64_t>(t.num_rows()));
    }
}

TEST_CASE("incompatible instantiation throws") {
    QueryTemplate tpl = parse_template("SELECT {num1}");
    Table no_numbers = table_from_strings("t", {"a"}, {{"x"}});
    Rng rng(1);
    CHECK_THROWS_AS(instantiate(tpl, no_numbers, rng), IncompatibleError);
}

TEST_CASE("property: uniformity of slot fillers within 5 points") {
    // num1 is eligible for Year and Pos; text1 for Result and Driver.
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {text1} = {val1:text1}");
    Table t = t_demo();
    std::map<std::string, int> proj_counts, filter_counts;
    const int kTrials = 10000;
    for (int s = 0; s < kTrials; ++s) {
        Rng rng = Rng::derive(777, static_cast<std::uint64_t>(s));
        SqlQuery q = instantiate(tpl, t, rng);
        ++proj_counts[std::get<ColumnRef>(q.projection[0].node).name];
        ++filter_counts[std::get<Compare>(q.where->node).col.name];
    }
    for (const auto& [name, count] : proj_counts) {
        INFO(name << " " << count);
        CHECK(std::abs(count / double(kTrials) - 0.5) < 0.05);
    }
    for (const auto& [name, count] : filter_counts) {
        INFO(name << " " << count);
        CHECK(std::abs(count / double(kTrials) - 0.5) < 0.05);
    }
}

TEST_CASE("property: bind soundness across compatible pairs") {
    auto tables = testing::generate_tables(131, 15);
    auto templates = load_templates(std::string(SQC_REPO_DIR) + "/data/templates_default.txt");
    CHECK(templates.size() >= 50);
    Rng rng(21);
    int done = 0;
    for (int iter = 0; done < 600 && iter < 20000; ++iter) {
        const Table& table = tables[rng.below(tables.size())];
        const QueryTemplate& tpl = templates[rng.below(templates.size())];
        if (!compatible(tpl, table)) continue;
        SqlQuery q = instantiate(tpl, table, rng);
        TableSchema schema = TableSchema::of(table);
        CHECK_NOTHROW(bind_query(q, schema));
        ++done;
    }
    CHECK(done == 600);
}

TEST_CASE("template file loading") {
    auto templates = load_templates(std::string(SQC_REPO_DIR) + "/data/templates_default.txt");
    CHECK(templates.size() >= 50);
    CHECK(templates[0].template_id == "t1");
    CHECK_THROWS_AS(load_templates("/nonexistent/file.txt"), IoError);
}
