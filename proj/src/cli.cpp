#include "sqc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sqc/errors.hpp"
#include "sqc/eval.hpp"
#include "sqc/executor.hpp"
#include "sqc/linearize.hpp"
#include "sqc/parser.hpp"
#include "sqc/pipeline.hpp"
#include "sqc/printer.hpp"
#include "sqc/stats.hpp"
#include "sqc/template.hpp"

namespace sqc::cli {

namespace {

unsigned default_jobs() {
    if (const char* env = std::getenv("SQC_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

std::map<DifficultyLevel, double> parse_mix(const std::string& spec) {
    std::map<DifficultyLevel, double> mix;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string part = spec.substr(pos, (comma == std::string::npos ? spec.size() : comma) - pos);
        if (!part.empty()) {
            std::size_t eq = part.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--mix", "expected level=fraction, got '" + part + "'");
            DifficultyLevel level;
            try {
                level = difficulty_from_name(trim(part.substr(0, eq)));
            } catch (const Error&) {
                throw CLI::ValidationError("--mix", "unknown level '" + part.substr(0, eq) + "'");
            }
            try {
                mix[level] = std::stod(part.substr(eq + 1));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--mix", "bad fraction in '" + part + "'");
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (mix.empty()) throw CLI::ValidationError("--mix", "no levels given");
    return mix;
}

int cmd_synth(const std::string& tables_dir, const std::string& templates_path,
              std::uint64_t count, std::uint64_t seed, const std::string& out_path, bool dedup,
              const std::string& mix_spec, std::uint32_t max_chars, unsigned jobs,
              const std::string& separator, std::uint32_t max_attempts) {
    auto tables = load_table_dir(tables_dir);
    auto templates = load_templates(templates_path);
    std::cerr << "loaded " << tables.size() << " tables, " << templates.size() << " templates\n";

    SynthesisConfig cfg;
    cfg.target_count = count;
    cfg.global_seed = seed;
    cfg.dedup = dedup;
    cfg.max_source_chars = max_chars;
    cfg.jobs = jobs;
    cfg.separator = separator;
    cfg.max_attempts_per_record = max_attempts;
    if (!mix_spec.empty()) cfg.difficulty_mix = parse_mix(mix_spec);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    std::uint64_t written = 0, next_progress = 1;
    synthesize(tables, templates, cfg, [&](CorpusRecord&& rec) {
        out << record_to_json_line(rec) << '\n';
        ++written;
        if (written * 10 >= next_progress * count) {
            std::cerr << "synth " << written << "/" << count << "\n";
            ++next_progress;
        }
    });
    out.flush();
    if (!out) throw IoError("write failed: " + out_path);
    std::cout << written << "\n";
    return 0;
}

int cmd_exec(const std::string& table_path, const std::string& sql) {
    Table table = load_table(table_path);
    TableSchema schema = TableSchema::of(table);
    SqlQuery query = parse(sql, &schema);
    std::cout << render_denotation(execute(query, table)) << "\n";
    return 0;
}

int cmd_parse(const std::string& sql, const std::string& table_path) {
    SqlQuery query;
    if (!table_path.empty()) {
        Table table = load_table(table_path);
        TableSchema schema = TableSchema::of(table);
        query = parse(sql, &schema);
    } else {
        query = parse(sql);
    }
    std::cout << print_canonical(query) << "\n" << element_stream(query).size() << "\n";
    return 0;
}

int cmd_linearize(const std::string& table_path, const std::string& sentence) {
    Table table = load_table(table_path);
    if (sentence.empty()) std::cout << flatten_table(table) << "\n";
    else std::cout << build_source(sentence, table).text << "\n";
    return 0;
}

int cmd_classify(const std::string& sql) {
    SqlQuery query = parse(sql);
    std::cout << difficulty_name(classify_difficulty(query)) << "\n";
    auto tags = tag_operators(query);
    for (std::size_t i = 0; i < tags.size(); ++i)
        std::cout << (i ? "," : "") << operator_tag_name(tags[i]);
    std::cout << "\n";
    return 0;
}

int cmd_stats(const std::string& corpus_path, bool as_json) {
    StatsReport report;
    read_jsonl_stream(corpus_path, [&](CorpusRecord&& rec, std::size_t) { report.add(rec); });
    if (as_json) std::cout << report.to_json() << "\n";
    else std::cout << report.to_text();
    return 0;
}

int cmd_split(const std::string& corpus_path, double fraction, std::uint64_t seed,
              std::string train_out, std::string holdout_out) {
    if (train_out.empty()) train_out = corpus_path + ".train";
    if (holdout_out.empty()) holdout_out = corpus_path + ".holdout";
    auto records = read_jsonl(corpus_path);
    SplitResult split = split_holdout(records, fraction, seed);
    write_jsonl(train_out, split.train);
    write_jsonl(holdout_out, split.holdout);
    std::cout << "train " << split.train.size() << "\n"
              << "holdout " << split.holdout.size() << "\n";
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& gold_path, const std::string& by,
             bool strict, bool as_json) {
    EvalOptions options;
    options.strict = strict;
    std::size_t pos = 0;
    while (pos <= by.size() && !by.empty()) {
        std::size_t comma = by.find(',', pos);
        std::string part = trim(by.substr(pos, (comma == std::string::npos ? by.size() : comma) - pos));
        if (part == "difficulty") options.by_difficulty = true;
        else if (part == "operator") options.by_operator = true;
        else if (!part.empty())
            throw CLI::ValidationError("--by", "expected difficulty and/or operator");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    EvalReport report = score_files(pred_path, gold_path, options);
    if (as_json) std::cout << report.to_json() << "\n";
    else std::cout << report.to_text();
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"SQL-over-tables corpus synthesis toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a pre-training corpus");
    std::string tables_dir, templates_path, out_path, mix_spec, separator = ", ";
    std::uint64_t count = 0, seed = 0;
    std::uint32_t max_chars = 100000, max_attempts = 50;
    unsigned jobs = default_jobs();
    bool dedup = true;
    synth->add_option("--tables", tables_dir, "directory of .csv/.json tables")->required();
    synth->add_option("--templates", templates_path, "template file, one per line")->required();
    synth->add_option("--count", count, "number of records to produce")->required();
    synth->add_option("--seed", seed, "global random seed");
    synth->add_option("--out", out_path, "output JSONL path")->required();
    synth->add_flag("--dedup,!--no-dedup", dedup, "deduplicate (sql, table) pairs (default on)");
    synth->add_option("--mix", mix_spec, "difficulty mix, e.g. easy=0.5,medium=0.5");
    synth->add_option("--max-chars", max_chars, "source length budget in characters");
    synth->add_option("--jobs", jobs, "worker threads (output independent of this)");
    synth->add_option("--separator", separator, "answer separator (default ', ')");
    synth->add_option("--max-attempts", max_attempts, "attempt budget per record");

    // exec
    auto* exec = app.add_subcommand("exec", "execute a query over a table");
    std::string exec_table, exec_sql;
    exec->add_option("--table", exec_table, "table file")->required();
    exec->add_option("--sql", exec_sql, "query text")->required();

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "print canonical form and element count");
    std::string parse_sql, parse_table;
    parse_cmd->add_option("--sql", parse_sql, "query text")->required();
    parse_cmd->add_option("--table", parse_table, "optional table file for binding");

    // linearize
    auto* lin = app.add_subcommand("linearize", "flatten a table (optionally with a sentence)");
    std::string lin_table, lin_sentence;
    lin->add_option("--table", lin_table, "table file")->required();
    lin->add_option("--sentence", lin_sentence, "sentence to prefix");

    // classify
    auto* classify = app.add_subcommand("classify", "difficulty level and operator tags");
    std::string classify_sql;
    classify->add_option("--sql", classify_sql, "query text")->required();

    // stats
    auto* stats = app.add_subcommand("stats", "corpus statistics");
    std::string stats_corpus;
    bool stats_json = false;
    stats->add_option("--corpus", stats_corpus, "corpus JSONL")->required();
    stats->add_flag("--json", stats_json, "emit JSON instead of text");

    // split
    auto* split = app.add_subcommand("split", "table-disjoint train/holdout split");
    std::string split_corpus, train_out, holdout_out;
    double fraction = 0.0;
    std::uint64_t split_seed = 0;
    split->add_option("--corpus", split_corpus, "corpus JSONL")->required();
    split->add_option("--fraction", fraction, "holdout fraction in (0,1)")->required();
    split->add_option("--seed", split_seed, "shuffle seed");
    split->add_option("--train-out", train_out, "train output path");
    split->add_option("--holdout-out", holdout_out, "holdout output path");

    // eval
    auto* eval = app.add_subcommand("eval", "denotation accuracy of predictions");
    std::string pred_path, gold_path, by;
    bool strict = false, eval_json = false;
    eval->add_option("--pred", pred_path, "one prediction per line")->required();
    eval->add_option("--gold", gold_path, "gold corpus JSONL")->required();
    eval->add_option("--by", by, "breakdowns: difficulty,operator");
    eval->add_flag("--strict", strict, "raw string comparison (no normalization)");
    eval->add_flag("--json", eval_json, "emit JSON instead of text");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (synth->parsed())
            return cmd_synth(tables_dir, templates_path, count, seed, out_path, dedup, mix_spec,
                             max_chars, jobs, separator, max_attempts);
        if (exec->parsed()) return cmd_exec(exec_table, exec_sql);
        if (parse_cmd->parsed()) return cmd_parse(parse_sql, parse_table);
        if (lin->parsed()) return cmd_linearize(lin_table, lin_sentence);
        if (classify->parsed()) return cmd_classify(classify_sql);
        if (stats->parsed()) return cmd_stats(stats_corpus, stats_json);
        if (split->parsed()) return cmd_split(split_corpus, fraction, split_seed, train_out, holdout_out);
        if (eval->parsed()) return cmd_eval(pred_path, gold_path, by, strict, eval_json);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}

}  // namespace sqc::cli
