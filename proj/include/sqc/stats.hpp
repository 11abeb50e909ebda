#pragma once

#include <map>
#include <string>

#include "sqc/pipeline.hpp"

namespace sqc {

// Corpus-level tallies. Difficulty counts always sum to `total`; a record
// contributes once per operator it carries.
struct StatsReport {
    std::uint64_t total = 0;
    std::map<DifficultyLevel, std::uint64_t> by_difficulty;
    std::map<OperatorTag, std::uint64_t> by_operator;
    std::map<std::string, std::uint64_t> by_template;
    std::map<std::string, std::uint64_t> by_table;
    // Target length histogram, bucket width 10 chars; key is the bucket's
    // lower bound.
    std::map<std::uint64_t, std::uint64_t> target_length_hist;

    void add(const CorpusRecord& rec);
    void merge(const StatsReport& other);

    std::string to_json() const;
    std::string to_text() const;
};

StatsReport corpus_stats(const std::vector<CorpusRecord>& records);

}  // namespace sqc
