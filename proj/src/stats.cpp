#include "sqc/stats.hpp"

#include <sstream>

#include <json.hpp>

namespace sqc {

void StatsReport::add(const CorpusRecord& rec) {
    ++total;
    ++by_difficulty[rec.difficulty];
    for (OperatorTag t : rec.operators) ++by_operator[t];
    ++by_template[rec.template_id];
    ++by_table[rec.table_id];
    ++target_length_hist[(rec.target.size() / 10) * 10];
}

void StatsReport::merge(const StatsReport& other) {
    total += other.total;
    for (const auto& [k, v] : other.by_difficulty) by_difficulty[k] += v;
    for (const auto& [k, v] : other.by_operator) by_operator[k] += v;
    for (const auto& [k, v] : other.by_template) by_template[k] += v;
    for (const auto& [k, v] : other.by_table) by_table[k] += v;
    for (const auto& [k, v] : other.target_length_hist) target_length_hist[k] += v;
}

StatsReport corpus_stats(const std::vector<CorpusRecord>& records) {
    StatsReport report;
    for (const auto& r : records) report.add(r);
    return report;
}

std::string StatsReport::to_json() const {
    nlohmann::json j;
    j["total"] = total;
    nlohmann::json d;
    for (const auto& [k, v] : by_difficulty) d[difficulty_name(k)] = v;
    j["by_difficulty"] = d;
    nlohmann::json o;
    for (const auto& [k, v] : by_operator) o[operator_tag_name(k)] = v;
    j["by_operator"] = o;
    j["by_template"] = by_template;
    j["by_table"] = by_table;
    nlohmann::json h;
    for (const auto& [k, v] : target_length_hist)
        h[std::to_string(k) + "-" + std::to_string(k + 9)] = v;
    j["target_length_hist"] = h;
    return j.dump();
}

std::string StatsReport::to_text() const {
    std::ostringstream out;
    auto row = [&](const std::string& name, std::uint64_t count) {
        out << "  " << name;
        for (std::size_t i = name.size(); i < 22; ++i) out << ' ';
        out << count << '\n';
    };
    out << "records " << total << '\n';
    out << "difficulty\n";
    for (const auto& [k, v] : by_difficulty) row(difficulty_name(k), v);
    out << "operators\n";
    for (const auto& [k, v] : by_operator) row(operator_tag_name(k), v);
    out << "templates\n";
    for (const auto& [k, v] : by_template) row(k, v);
    out << "tables\n";
    for (const auto& [k, v] : by_table) row(k, v);
    out << "target length\n";
    for (const auto& [k, v] : target_length_hist)
        row(std::to_string(k) + "-" + std::to_string(k + 9), v);
    return out.str();
}

}  // namespace sqc
