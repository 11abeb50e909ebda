#include "sqc/eval.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "sqc/errors.hpp"

namespace sqc {

namespace {

AnswerAtom make_atom(std::string_view piece, bool strict) {
    AnswerAtom atom;
    if (strict) {
        atom.norm = trim(piece);
        return atom;
    }
    std::string s = collapse_ws(fold_case(trim(piece)));
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\''))) {
        s = trim(s.substr(1, s.size() - 2));
    }
    atom.num = Decimal::parse_lenient(s);
    atom.norm = std::move(s);
    return atom;
}

std::vector<std::string_view> split_on(std::string_view raw, std::string_view sep) {
    std::vector<std::string_view> out;
    if (sep.empty()) {
        out.push_back(raw);
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        std::size_t hit = raw.find(sep, pos);
        if (hit == std::string_view::npos) {
            out.push_back(raw.substr(pos));
            return out;
        }
        out.push_back(raw.substr(pos, hit - pos));
        pos = hit + sep.size();
    }
}

// Matching key: numeric atoms by canonical digits, others by string. Two
// atoms with identical normalized strings always parse the same way, so
// this bucketing realizes the perfect-matching rule exactly.
std::string atom_key(const AnswerAtom& a) {
    return a.num ? "#" + a.num->str() : "$" + a.norm;
}

}  // namespace

AnswerSet normalize_answer(std::string_view raw, std::string_view separator, bool strict) {
    AnswerSet set;
    if (trim(raw).empty()) return set;  // no atoms
    for (std::string_view piece : split_on(raw, separator)) set.atoms.push_back(make_atom(piece, strict));
    return set;
}

bool denotation_match(const AnswerSet& pred, const AnswerSet& gold) {
    if (pred.atoms.size() != gold.atoms.size()) return false;
    std::unordered_map<std::string, std::int64_t> counts;
    for (const auto& a : pred.atoms) ++counts[atom_key(a)];
    for (const auto& a : gold.atoms)
        if (--counts[atom_key(a)] < 0) return false;
    return true;
}

EvalReport score(const std::vector<std::string>& predictions,
                 const std::vector<CorpusRecord>& gold, const EvalOptions& options) {
    if (predictions.size() != gold.size())
        throw LengthMismatchError("prediction count " + std::to_string(predictions.size()) +
                                  " does not match gold record count " +
                                  std::to_string(gold.size()));
    EvalReport report;
    if (options.by_difficulty) {
        for (int i = 0; i < 4; ++i) report.by_difficulty[static_cast<DifficultyLevel>(i)];
    }
    if (options.by_operator) {
        for (OperatorTag t : kAllOperatorTags) report.by_operator[t];
    }
    for (std::size_t i = 0; i < gold.size(); ++i) {
        AnswerSet p = normalize_answer(predictions[i], options.separator, options.strict);
        AnswerSet g = normalize_answer(gold[i].target, options.separator, options.strict);
        bool ok = denotation_match(p, g);
        ++report.overall.total;
        report.overall.correct += ok;
        if (options.by_difficulty) {
            auto& bucket = report.by_difficulty[gold[i].difficulty];
            ++bucket.total;
            bucket.correct += ok;
        }
        if (options.by_operator) {
            for (OperatorTag t : gold[i].operators) {
                auto& bucket = report.by_operator[t];
                ++bucket.total;
                bucket.correct += ok;
            }
        }
    }
    return report;
}

EvalReport score_files(const std::string& pred_path, const std::string& gold_path,
                       const EvalOptions& options) {
    std::ifstream in(pred_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + pred_path);
    std::vector<std::string> predictions;
    std::string line;
    while (std::getline(in, line)) predictions.push_back(line);
    auto gold = read_jsonl(gold_path);
    return score(predictions, gold, options);
}

std::string EvalReport::to_json() const {
    nlohmann::json j;
    j["overall"] = {{"total", overall.total},
                    {"correct", overall.correct},
                    {"accuracy", overall.accuracy()}};
    if (!by_difficulty.empty()) {
        nlohmann::json d;
        for (const auto& [level, bucket] : by_difficulty)
            d[difficulty_name(level)] = {{"total", bucket.total},
                                         {"correct", bucket.correct},
                                         {"accuracy", bucket.accuracy()}};
        j["by_difficulty"] = d;
    }
    if (!by_operator.empty()) {
        nlohmann::json d;
        for (const auto& [tag, bucket] : by_operator)
            d[operator_tag_name(tag)] = {{"total", bucket.total},
                                         {"correct", bucket.correct},
                                         {"accuracy", bucket.accuracy()}};
        j["by_operator"] = d;
    }
    return j.dump();
}

std::string EvalReport::to_text() const {
    std::ostringstream out;
    auto line = [&](const std::string& name, const BucketScore& b) {
        char acc[32];
        std::snprintf(acc, sizeof acc, "%.4f", b.accuracy());
        out << name;
        for (std::size_t i = name.size(); i < 14; ++i) out << ' ';
        out << acc << "  (" << b.correct << "/" << b.total << ")\n";
    };
    line("overall", overall);
    for (const auto& [level, bucket] : by_difficulty) line(difficulty_name(level), bucket);
    for (const auto& [tag, bucket] : by_operator) line(operator_tag_name(tag), bucket);
    return out.str();
}

}  // namespace sqc
