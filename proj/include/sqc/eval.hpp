#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqc/cell.hpp"
#include "sqc/pipeline.hpp"

namespace sqc {

struct AnswerAtom {
    std::string norm;             // normalized string form
    std::optional<Decimal> num;   // attached when the atom parses numerically
    bool operator==(const AnswerAtom&) const = default;
};

// Normalized multiset of answer atoms.
struct AnswerSet {
    std::vector<AnswerAtom> atoms;
    bool operator==(const AnswerSet&) const = default;
};

// Splits on the separator, then per atom: trim, ASCII case-fold, collapse
// internal whitespace, strip one layer of surrounding quotes, and attach a
// number when the atom parses after comma-stripping. Strict mode skips
// everything except the split and trim (raw string comparison).
AnswerSet normalize_answer(std::string_view raw, std::string_view separator = ", ",
                           bool strict = false);

// Multiset equality; atoms match numerically when both carry numbers and
// by exact normalized string otherwise.
bool denotation_match(const AnswerSet& pred, const AnswerSet& gold);

struct BucketScore {
    std::uint64_t total = 0;
    std::uint64_t correct = 0;
    double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

struct EvalReport {
    BucketScore overall;
    std::map<DifficultyLevel, BucketScore> by_difficulty;
    std::map<OperatorTag, BucketScore> by_operator;

    std::string to_json() const;
    std::string to_text() const;
};

struct EvalOptions {
    bool by_difficulty = false;
    bool by_operator = false;
    bool strict = false;
    std::string separator = ", ";
};

// Line i of the predictions scores against record i of the gold corpus.
// Throws LengthMismatchError when the counts differ.
EvalReport score(const std::vector<std::string>& predictions,
                 const std::vector<CorpusRecord>& gold, const EvalOptions& options = {});

// Reads one prediction per line from pred_path (trailing newline optional).
EvalReport score_files(const std::string& pred_path, const std::string& gold_path,
                       const EvalOptions& options = {});

}  // namespace sqc
