#include "sqc/linearize.hpp"

#include "sqc/errors.hpp"

namespace sqc {

namespace {

void replace_all(std::string& s, std::string_view pattern, std::string_view replacement) {
    std::size_t pos = 0;
    while ((pos = s.find(pattern, pos)) != std::string::npos) {
        s.replace(pos, pattern.size(), replacement);
        pos += replacement.size();
    }
}

std::string sanitize(std::string s) {
    replace_all(s, "[HEAD]", "/");
    replace_all(s, "[ROW]", "/");
    replace_all(s, "|", "/");
    return s;
}

std::string head_segment(const Table& table) {
    std::string out = "[HEAD] :";
    for (std::size_t c = 0; c < table.headers.size(); ++c) {
        out += c ? " | " : " ";
        out += sanitize(table.headers[c]);
    }
    return out;
}

std::string row_segment(const Table& table, std::size_t r) {
    std::string out = " [ROW] " + std::to_string(r + 1) + " :";
    for (std::size_t c = 0; c < table.num_cols(); ++c) {
        out += c ? " | " : " ";
        out += sanitize(table.at(r, c).display());
    }
    return out;
}

std::string rstrip(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    return s;
}

}  // namespace

std::string flatten_table(const Table& table) {
    if (table.num_cols() == 0) throw EmptyTableError("cannot flatten a table with no columns");
    std::string out = head_segment(table);
    for (std::size_t r = 0; r < table.num_rows(); ++r) out += row_segment(table, r);
    return rstrip(std::move(out));
}

LinearizedSource build_source(std::string_view sentence, const Table& table) {
    std::string sent = trim(sentence);
    if (sent.empty()) throw EmptySentenceError("sentence is empty after trimming");
    LinearizedSource src;
    src.sentence_begin = 0;
    src.sentence_end = sent.size();
    src.text = std::move(sent);
    src.text += ' ';
    src.table_begin = src.text.size();
    src.text += flatten_table(table);
    src.table_end = src.text.size();
    return src;
}

Table truncate_rows(const Table& table, std::size_t max_source_chars, std::string_view sentence) {
    std::string sent = trim(sentence);
    if (sent.empty()) throw EmptySentenceError("sentence is empty after trimming");
    if (table.num_cols() == 0) throw EmptyTableError("cannot flatten a table with no columns");

    const std::size_t base = sent.size() + 1 + rstrip(head_segment(table)).size();
    if (base > max_source_chars)
        throw BudgetError("header segment alone needs " + std::to_string(base) +
                          " chars, budget is " + std::to_string(max_source_chars));

    // Walk row segments, accounting for the final rstrip: only the last
    // kept segment's trailing spaces are removed.
    std::size_t kept = 0;
    std::size_t raw_len = sent.size() + 1 + head_segment(table).size();
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
        std::string seg = row_segment(table, r);
        std::size_t with_row = raw_len + seg.size();
        std::size_t stripped = with_row - (seg.size() - rstrip(seg).size());
        if (stripped > max_source_chars) break;
        raw_len = with_row;
        kept = r + 1;
    }

    Table out;
    out.id = table.id;
    out.headers = table.headers;
    out.types = table.types;
    out.rows.assign(table.rows.begin(), table.rows.begin() + static_cast<std::ptrdiff_t>(kept));
    return out;
}

}  // namespace sqc
