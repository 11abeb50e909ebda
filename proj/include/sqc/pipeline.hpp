#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqc/analysis.hpp"
#include "sqc/table.hpp"
#include "sqc/template.hpp"

namespace sqc {

struct SeedPath {
    std::uint64_t seed = 0;
    std::uint64_t shard = 0;    // block index of the attempt (fixed block size)
    std::uint64_t attempt = 0;  // global attempt ordinal
    bool operator==(const SeedPath&) const = default;
};

// One pre-training pair: the model input (SQL + flattened table), the
// execution result as the decoder target, and bookkeeping metadata.
struct CorpusRecord {
    std::string source;
    std::string target;
    std::string sql;       // canonical rendering
    std::string table_id;
    DifficultyLevel difficulty = DifficultyLevel::Easy;
    std::vector<OperatorTag> operators;  // sorted, unique
    std::string template_id;
    SeedPath seed_path;
    bool operator==(const CorpusRecord&) const = default;
};

struct SynthesisConfig {
    std::uint64_t target_count = 0;
    std::uint32_t max_attempts_per_record = 50;
    std::uint32_t max_source_chars = 100000;
    bool dedup = true;
    std::optional<std::map<DifficultyLevel, double>> difficulty_mix;  // fractions sum to 1
    std::string separator = ", ";
    std::uint64_t global_seed = 0;
    unsigned jobs = 1;  // worker threads; output is identical for any value

    void validate() const;  // throws on bad fields
};

// Streams exactly target_count records to `emit`, in a deterministic order
// that depends only on the config (not on the number of jobs). Queries that
// error, execute to an empty result, duplicate a (sql, table_id) pair under
// dedup, or overflow their difficulty quota are rejected; each rejection
// consumes one attempt out of target_count * max_attempts_per_record.
// Throws ExhaustionError when the attempt budget runs out and
// NoCompatiblePairError when no template fits any table.
void synthesize(const std::vector<Table>& tables, const std::vector<QueryTemplate>& templates,
                const SynthesisConfig& config,
                const std::function<void(CorpusRecord&&)>& emit);

std::vector<CorpusRecord> synthesize_vec(const std::vector<Table>& tables,
                                         const std::vector<QueryTemplate>& templates,
                                         const SynthesisConfig& config);

// JSONL: one object per record, UTF-8, LF line endings, keys sorted.
std::uint64_t write_jsonl(const std::string& path, const std::vector<CorpusRecord>& records);
std::vector<CorpusRecord> read_jsonl(const std::string& path);
// Streaming reader for large corpora; `fn` receives (record, 1-based line).
void read_jsonl_stream(const std::string& path,
                       const std::function<void(CorpusRecord&&, std::size_t)>& fn);
CorpusRecord record_from_json_line(const std::string& line, std::size_t lineno);
std::string record_to_json_line(const CorpusRecord& rec);

struct SplitResult {
    std::vector<CorpusRecord> train, holdout;
};

// Table-disjoint partition: no table_id appears on both sides; the holdout
// share of records is within one table-group of `fraction`. Deterministic
// per seed. Throws DegenerateError with fewer than two distinct tables.
SplitResult split_holdout(const std::vector<CorpusRecord>& records, double fraction,
                          std::uint64_t seed);

}  // namespace sqc
