#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "sqc/errors.hpp"
#include "sqc/executor.hpp"
#include "sqc/parser.hpp"
#include "sqc/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/tablegen.hpp"

using namespace sqc;
using sqc::testing::t_demo;

namespace {

std::vector<QueryTemplate> default_templates() {
    return load_templates(std::string(SQC_REPO_DIR) + "/data/templates_default.txt");
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("five records from T_demo and the section-3.2 template") {
    // [DERIVED] T_demo admits well over five distinct non-empty instantiations
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {text1} = {val1:text1}", "t1");
    SynthesisConfig cfg;
    cfg.target_count = 5;
    cfg.global_seed = 9;
    cfg.dedup = true;
    auto records = synthesize_vec({t_demo()}, {tpl}, cfg);
    REQUIRE(records.size() == 5);
    std::set<std::string> sqls;
    for (const auto& r : records) {
        CHECK(!r.target.empty());
        CHECK(r.table_id == "t_demo");
        CHECK(r.template_id == "t1");
        CHECK(r.source.rfind(r.sql, 0) == 0);  // source begins with the sql
        CHECK(r.source.find("[HEAD]") != std::string::npos);
        sqls.insert(r.sql);
    }
    CHECK(sqls.size() == 5);  // dedup made them distinct
}

TEST_CASE("determinism: same config twice is byte-identical") {
    auto tables = testing::generate_tables(3, 6);
    auto templates = default_templates();
    SynthesisConfig cfg;
    cfg.target_count = 300;
    cfg.global_seed = 1234;
    auto a = synthesize_vec(tables, templates, cfg);
    auto b = synthesize_vec(tables, templates, cfg);
    CHECK(a == b);
    std::string pa = temp_path("sqc_det_a.jsonl"), pb = temp_path("sqc_det_b.jsonl");
    write_jsonl(pa, a);
    write_jsonl(pb, b);
    CHECK(slurp(pa) == slurp(pb));
    std::filesystem::remove(pa);
    std::filesystem::remove(pb);
}

TEST_CASE("jobs do not change the output") {
    auto tables = testing::generate_tables(5, 6);
    auto templates = default_templates();
    SynthesisConfig cfg;
    cfg.target_count = 400;
    cfg.global_seed = 99;
    cfg.jobs = 1;
    auto one = synthesize_vec(tables, templates, cfg);
    cfg.jobs = 8;
    auto eight = synthesize_vec(tables, templates, cfg);
    CHECK(one == eight);
}

TEST_CASE("re-execution consistency and no empty targets") {
    auto tables = testing::generate_tables(13, 8);
    auto templates = default_templates();
    SynthesisConfig cfg;
    cfg.target_count = 500;
    cfg.global_seed = 31;
    auto records = synthesize_vec(tables, templates, cfg);
    std::map<std::string, const Table*> by_id;
    for (const auto& t : tables) by_id[t.id] = &t;
    for (const auto& r : records) {
        CHECK(!trim(r.target).empty());
        const Table* table = by_id.at(r.table_id);
        TableSchema schema = TableSchema::of(*table);
        SqlQuery q = parse(r.sql, &schema);
        Denotation d = execute(q, *table);
        CHECK(!d.is_empty());
        CHECK(render_denotation(d, cfg.separator) == r.target);
    }
}

TEST_CASE("dedup produces unique (sql, table) pairs; disabling allows repeats") {
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {text1} = {val1:text1}", "t1");
    SynthesisConfig cfg;
    cfg.target_count = 12;
    cfg.global_seed = 2;
    cfg.dedup = false;
    // T_demo's filler space is small; without dedup 12 records must repeat.
    auto records = synthesize_vec({t_demo()}, {tpl}, cfg);
    std::set<std::string> sqls;
    for (const auto& r : records) sqls.insert(r.sql);
    CHECK(sqls.size() < records.size());
}

TEST_CASE("dedup exhaustion raises after the attempt budget") {
    // The distinct non-empty instantiation space of this template over
    // T_demo is far below 200 (2 numeric projections x 2 text columns x
    // <=3 values each = at most 12 fillings).
    QueryTemplate tpl = parse_template("SELECT {num1} WHERE {text1} = {val1:text1}", "t1");
    SynthesisConfig cfg;
    cfg.target_count = 200;
    cfg.global_seed = 4;
    cfg.dedup = true;
    cfg.max_attempts_per_record = 5;
    CHECK_THROWS_AS(synthesize_vec({t_demo()}, {tpl}, cfg), ExhaustionError);
}

TEST_CASE("no compatible pair") {
    QueryTemplate tpl = parse_template("SELECT {num1}", "t1");
    Table text_only = table_from_strings("t", {"a"}, {{"x"}});
    SynthesisConfig cfg;
    cfg.target_count = 1;
    CHECK_THROWS_AS(synthesize_vec({text_only}, {tpl}, cfg), NoCompatiblePairError);
    CHECK_THROWS_AS(synthesize_vec({}, {tpl}, cfg), NoCompatiblePairError);
}

TEST_CASE("difficulty mix is honored within one record per level") {
    auto tables = testing::generate_tables(17, 10);
    auto templates = default_templates();
    SynthesisConfig cfg;
    cfg.target_count = 200;
    cfg.global_seed = 77;
    cfg.difficulty_mix = std::map<DifficultyLevel, double>{
        {DifficultyLevel::Easy, 0.5}, {DifficultyLevel::Medium, 0.5}};
    auto records = synthesize_vec(tables, templates, cfg);
    std::map<DifficultyLevel, int> counts;
    for (const auto& r : records) ++counts[r.difficulty];
    CHECK(counts[DifficultyLevel::Easy] == 100);
    CHECK(counts[DifficultyLevel::Medium] == 100);
    CHECK(counts[DifficultyLevel::Hard] == 0);
    CHECK(counts[DifficultyLevel::ExtraHard] == 0);
}

TEST_CASE("mix fractions must sum to one") {
    SynthesisConfig cfg;
    cfg.target_count = 10;
    cfg.difficulty_mix = std::map<DifficultyLevel, double>{{DifficultyLevel::Easy, 0.4}};
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("jsonl round trip") {
    auto tables = testing::generate_tables(19, 4);
    auto templates = default_templates();
    SynthesisConfig cfg;
    cfg.target_count = 50;
    cfg.global_seed = 8;
    auto records = synthesize_vec(tables, templates, cfg);
    std::string path = temp_path("sqc_roundtrip.jsonl");
    CHECK(write_jsonl(path, records) == records.size());
    auto back = read_jsonl(path);
    CHECK(back == records);
    std::filesystem::remove(path);
}

TEST_CASE("jsonl schema errors name the line") {
    std::string path = temp_path("sqc_bad.jsonl");
    {
        CorpusRecord r;
        r.source = "SELECT a [HEAD] : a [ROW] 1 : x";
        r.target = "x";
        r.sql = "SELECT a";
        r.table_id = "t";
        r.template_id = "t1";
        std::ofstream out(path, std::ios::binary);
        out << record_to_json_line(r) << "\n";
        out << R"({"source": "s", "sql": "q", "table_id": "t"})" << "\n";  // missing target
    }
    CHECK_THROWS_WITH_AS(read_jsonl(path), doctest::Contains("line 2"), SchemaError);
    std::filesystem::remove(path);

    std::string empty_path = temp_path("sqc_empty.jsonl");
    { std::ofstream out(empty_path, std::ios::binary); }
    CHECK(read_jsonl(empty_path).empty());
    std::filesystem::remove(empty_path);
}

TEST_CASE("split holdout is table-disjoint and near the fraction") {
    // 10 tables, evenly sized groups -> holdout gets exactly 2 tables.
    std::vector<CorpusRecord> records;
    for (int t = 0; t < 10; ++t) {
        for (int i = 0; i < 7; ++i) {
            CorpusRecord r;
            r.table_id = "table_" + std::to_string(t);
            r.sql = "SELECT a";
            r.target = "x";
            r.source = "s";
            r.template_id = "t1";
            records.push_back(r);
        }
    }
    SplitResult split = split_holdout(records, 0.2, 5);
    CHECK(split.holdout.size() == 14);
    CHECK(split.train.size() == 56);
    std::set<std::string> train_ids, holdout_ids;
    for (const auto& r : split.train) train_ids.insert(r.table_id);
    for (const auto& r : split.holdout) holdout_ids.insert(r.table_id);
    CHECK(holdout_ids.size() == 2);
    for (const auto& id : holdout_ids) CHECK(!train_ids.count(id));

    SplitResult again = split_holdout(records, 0.2, 5);
    CHECK(again.holdout == split.holdout);  // deterministic per seed
    SplitResult other = split_holdout(records, 0.2, 6);
    CHECK((other.holdout != split.holdout || other.train != split.train ||
           true));  // different seed may differ; at minimum it must not crash
}

TEST_CASE("split edge cases") {
    std::vector<CorpusRecord> one_table;
    CorpusRecord r;
    r.table_id = "only";
    one_table.push_back(r);
    CHECK_THROWS_AS(split_holdout(one_table, 0.5, 1), DegenerateError);
    CHECK_THROWS_AS(split_holdout(one_table, 0.0, 1), DegenerateError);
    CHECK_THROWS_AS(split_holdout(one_table, 1.0, 1), DegenerateError);
}

TEST_CASE("shard metadata reflects attempt ordinals") {
    auto tables = testing::generate_tables(23, 4);
    auto templates = default_templates();
    SynthesisConfig cfg;
    cfg.target_count = 40;
    cfg.global_seed = 3;
    auto records = synthesize_vec(tables, templates, cfg);
    for (std::size_t i = 1; i < records.size(); ++i)
        CHECK(records[i].seed_path.attempt > records[i - 1].seed_path.attempt);
    for (const auto& rec : records) {
        CHECK(rec.seed_path.seed == 3);
        CHECK(rec.seed_path.shard == rec.seed_path.attempt / 1024);
    }
}
