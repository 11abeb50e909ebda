#include "sqc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "sqc/errors.hpp"
#include "sqc/executor.hpp"
#include "sqc/linearize.hpp"
#include "sqc/printer.hpp"
#include "sqc/rng.hpp"

namespace sqc {

namespace {

// Attempts are produced in fixed-size blocks so that worker parallelism
// cannot change the output: candidates are pure functions of
// (config, attempt index), and acceptance happens sequentially in attempt
// order. The block size is part of the determinism contract.
constexpr std::uint64_t kAttemptBlock = 1024;

struct Candidate {
    bool ok = false;
    CorpusRecord record;
};

std::vector<double> normalized_mix(const std::map<DifficultyLevel, double>& mix) {
    std::vector<double> fractions(4, 0.0);
    double sum = 0;
    for (const auto& [level, f] : mix) {
        fractions[static_cast<std::size_t>(level)] = f;
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw Error("ConfigError", "difficulty mix fractions must sum to 1, got " + std::to_string(sum));
    return fractions;
}

// Largest-remainder apportionment of target_count across levels.
std::vector<std::uint64_t> level_quotas(const std::vector<double>& fractions,
                                        std::uint64_t target) {
    std::vector<std::uint64_t> quotas(4, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        double exact = fractions[i] * static_cast<double>(target);
        quotas[i] = static_cast<std::uint64_t>(exact);
        assigned += quotas[i];
        remainders.push_back({exact - std::floor(exact), i});
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    for (std::size_t i = 0; assigned < target; ++i, ++assigned)
        ++quotas[remainders[i % 4].second];
    return quotas;
}

}  // namespace

void SynthesisConfig::validate() const {
    if (target_count == 0) throw Error("ConfigError", "target_count must be positive");
    if (max_attempts_per_record == 0)
        throw Error("ConfigError", "max_attempts_per_record must be positive");
    if (difficulty_mix) (void)normalized_mix(*difficulty_mix);
}

void synthesize(const std::vector<Table>& tables, const std::vector<QueryTemplate>& templates,
                const SynthesisConfig& config,
                const std::function<void(CorpusRecord&&)>& emit) {
    config.validate();
    if (tables.empty() || templates.empty())
        throw NoCompatiblePairError("need at least one table and one template");

    // Per-table compatible template lists, shared read-only by workers.
    std::vector<std::vector<std::size_t>> table_templates(tables.size());
    bool any_pair = false;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        for (std::size_t p = 0; p < templates.size(); ++p)
            if (compatible(templates[p], tables[t])) table_templates[t].push_back(p);
        if (!table_templates[t].empty()) any_pair = true;
    }
    if (!any_pair) throw NoCompatiblePairError("no template is compatible with any table");

    const std::uint64_t budget =
        config.target_count * static_cast<std::uint64_t>(config.max_attempts_per_record);

    std::optional<std::vector<std::uint64_t>> quotas;
    if (config.difficulty_mix)
        quotas = level_quotas(normalized_mix(*config.difficulty_mix), config.target_count);

    // Pure candidate construction for one attempt ordinal.
    auto make_candidate = [&](std::uint64_t attempt) -> Candidate {
        Rng rng = Rng::derive(config.global_seed, attempt);
        const std::size_t table_idx = rng.below(tables.size());
        const Table& table = tables[table_idx];
        const auto& pool = table_templates[table_idx];
        if (pool.empty()) return {};
        const QueryTemplate& tpl = templates[pool[rng.below(pool.size())]];
        try {
            SqlQuery query = instantiate(tpl, table, rng);
            Denotation result = execute(query, table);
            if (result.is_empty()) return {};
            std::string target = render_denotation(result, config.separator);
            if (trim(target).empty()) return {};

            Candidate c;
            c.record.sql = print_canonical(query);
            c.record.target = std::move(target);
            c.record.table_id = table.id;
            c.record.difficulty = classify_difficulty(query);
            c.record.operators = tag_operators(query);
            c.record.template_id = tpl.template_id;
            c.record.seed_path = SeedPath{config.global_seed, attempt / kAttemptBlock, attempt};
            Table shown = truncate_rows(table, config.max_source_chars, c.record.sql);
            c.record.source = build_source(c.record.sql, shown).text;
            c.ok = true;
            return c;
        } catch (const Error&) {
            return {};  // rejected attempt: executor or budget error
        }
    };

    const unsigned jobs = std::max(1u, config.jobs);
    std::unordered_set<std::string> seen;
    std::uint64_t accepted = 0;
    std::vector<Candidate> block;

    for (std::uint64_t block_start = 0; block_start < budget && accepted < config.target_count;
         block_start += kAttemptBlock) {
        const std::uint64_t n = std::min(kAttemptBlock, budget - block_start);
        block.assign(n, Candidate{});
        if (jobs == 1) {
            for (std::uint64_t i = 0; i < n; ++i) block[i] = make_candidate(block_start + i);
        } else {
            std::vector<std::thread> workers;
            for (unsigned w = 0; w < jobs; ++w) {
                workers.emplace_back([&, w] {
                    for (std::uint64_t i = w; i < n; i += jobs)
                        block[i] = make_candidate(block_start + i);
                });
            }
            for (auto& t : workers) t.join();
        }
        // Acceptance is sequential in attempt order: dedup and quota state
        // must evolve identically no matter how candidates were produced.
        for (std::uint64_t i = 0; i < n && accepted < config.target_count; ++i) {
            Candidate& c = block[i];
            if (!c.ok) continue;
            std::string key;
            if (config.dedup) {
                key = c.record.sql + '\x1f' + c.record.table_id;
                if (seen.count(key)) continue;
            }
            if (quotas) {
                auto& q = (*quotas)[static_cast<std::size_t>(c.record.difficulty)];
                if (q == 0) continue;
                --q;
            }
            if (config.dedup) seen.insert(std::move(key));
            ++accepted;
            emit(std::move(c.record));
        }
    }

    if (accepted < config.target_count) {
        std::string msg = "attempt budget exhausted: " + std::to_string(accepted) + " of " +
                          std::to_string(config.target_count) + " records";
        if (quotas) {
            msg += "; level shortfalls:";
            for (std::size_t i = 0; i < 4; ++i) {
                if ((*quotas)[i] > 0)
                    msg += std::string(" ") + difficulty_name(static_cast<DifficultyLevel>(i)) +
                           "=" + std::to_string((*quotas)[i]);
            }
        }
        throw ExhaustionError(msg);
    }
}

std::vector<CorpusRecord> synthesize_vec(const std::vector<Table>& tables,
                                         const std::vector<QueryTemplate>& templates,
                                         const SynthesisConfig& config) {
    std::vector<CorpusRecord> out;
    out.reserve(config.target_count);
    synthesize(tables, templates, config, [&](CorpusRecord&& r) { out.push_back(std::move(r)); });
    return out;
}

// ---- JSONL ----------------------------------------------------------------

std::string record_to_json_line(const CorpusRecord& rec) {
    nlohmann::json j;
    j["source"] = rec.source;
    j["target"] = rec.target;
    j["sql"] = rec.sql;
    j["table_id"] = rec.table_id;
    j["difficulty"] = difficulty_name(rec.difficulty);
    nlohmann::json ops = nlohmann::json::array();
    for (OperatorTag t : rec.operators) ops.push_back(operator_tag_name(t));
    j["operators"] = ops;
    j["template_id"] = rec.template_id;
    j["seed_path"] = {{"seed", rec.seed_path.seed},
                      {"shard", rec.seed_path.shard},
                      {"attempt", rec.seed_path.attempt}};
    return j.dump();
}

CorpusRecord record_from_json_line(const std::string& line, std::size_t lineno) {
    auto fail = [&](const std::string& why) -> SchemaError {
        return SchemaError("line " + std::to_string(lineno) + ": " + why);
    };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw fail(std::string("malformed JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw fail("not a JSON object");
    auto str_field = [&](const char* name) -> std::string {
        if (!j.contains(name)) throw fail(std::string("missing field '") + name + "'");
        if (!j[name].is_string()) throw fail(std::string("field '") + name + "' must be a string");
        return j[name].get<std::string>();
    };
    CorpusRecord rec;
    rec.source = str_field("source");
    rec.target = str_field("target");
    rec.sql = str_field("sql");
    rec.table_id = str_field("table_id");
    rec.difficulty = difficulty_from_name(str_field("difficulty"));
    if (!j.contains("operators") || !j["operators"].is_array())
        throw fail("field 'operators' must be an array");
    for (const auto& op : j["operators"]) {
        if (!op.is_string()) throw fail("field 'operators' must contain strings");
        rec.operators.push_back(operator_tag_from_name(op.get<std::string>()));
    }
    rec.template_id = str_field("template_id");
    if (!j.contains("seed_path") || !j["seed_path"].is_object())
        throw fail("field 'seed_path' must be an object");
    const auto& sp = j["seed_path"];
    for (const char* k : {"seed", "shard", "attempt"})
        if (!sp.contains(k) || !sp[k].is_number_unsigned())
            throw fail(std::string("seed_path.") + k + " must be an unsigned integer");
    rec.seed_path = SeedPath{sp["seed"].get<std::uint64_t>(), sp["shard"].get<std::uint64_t>(),
                             sp["attempt"].get<std::uint64_t>()};
    return rec;
}

std::uint64_t write_jsonl(const std::string& path, const std::vector<CorpusRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (const auto& rec : records) out << record_to_json_line(rec) << '\n';
    out.flush();
    if (!out) throw IoError("write failed: " + path);
    return records.size();
}

void read_jsonl_stream(const std::string& path,
                       const std::function<void(CorpusRecord&&, std::size_t)>& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        fn(record_from_json_line(line, lineno), lineno);
    }
}

std::vector<CorpusRecord> read_jsonl(const std::string& path) {
    std::vector<CorpusRecord> out;
    read_jsonl_stream(path, [&](CorpusRecord&& r, std::size_t) { out.push_back(std::move(r)); });
    return out;
}

// ---- holdout split ---------------------------------------------------------

SplitResult split_holdout(const std::vector<CorpusRecord>& records, double fraction,
                          std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw DegenerateError("fraction must be in (0, 1)");
    std::vector<std::string> ids;  // first-appearance order
    std::unordered_set<std::string> seen;
    std::size_t total = records.size();
    for (const auto& r : records) {
        if (seen.insert(r.table_id).second) ids.push_back(r.table_id);
    }
    if (ids.size() < 2)
        throw DegenerateError("need at least 2 distinct table_ids to split, have " +
                              std::to_string(ids.size()));

    std::unordered_map<std::string, std::size_t> group_sizes;
    for (const auto& r : records) ++group_sizes[r.table_id];

    // Fisher-Yates with the toolkit Rng keeps the split platform-stable.
    Rng rng = Rng::derive(seed, 0x9e3779b9ULL);
    for (std::size_t i = ids.size() - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(ids[i], ids[j]);
    }

    const double target = fraction * static_cast<double>(total);
    std::unordered_set<std::string> holdout_ids;
    double count = 0;
    for (std::size_t i = 0; i < ids.size() && count < target; ++i) {
        if (holdout_ids.size() + 1 == ids.size()) break;  // train keeps >= 1 group
        holdout_ids.insert(ids[i]);
        count += static_cast<double>(group_sizes[ids[i]]);
    }

    SplitResult out;
    for (const auto& r : records) {
        if (holdout_ids.count(r.table_id)) out.holdout.push_back(r);
        else out.train.push_back(r);
    }
    return out;
}

}  // namespace sqc
