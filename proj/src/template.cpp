#include "sqc/template.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "sqc/errors.hpp"
#include "sqc/parser.hpp"
#include "sqc/printer.hpp"

namespace sqc {

namespace {

Slot::Kind column_kind_from_word(std::string_view word) {
    if (word == "num") return Slot::Kind::NumCol;
    if (word == "text") return Slot::Kind::TextCol;
    if (word == "col") return Slot::Kind::AnyCol;
    throw TemplateError("unknown slot family '" + std::string(word) + "'");
}

// Parses the inside of a {...} slot, e.g. "num1", "val2:text1", "int1".
Slot parse_slot_spec(std::string_view spec, const std::vector<Slot>& seen,
                     std::string_view whole) {
    auto split_index = [&](std::string_view s) -> std::pair<std::string_view, int> {
        std::size_t i = 0;
        while (i < s.size() && (s[i] < '0' || s[i] > '9')) ++i;
        if (i == 0 || i == s.size()) {
            throw TemplateError("malformed slot '" + std::string(whole) + "'");
        }
        int idx = 0;
        for (std::size_t j = i; j < s.size(); ++j) {
            if (s[j] < '0' || s[j] > '9')
                throw TemplateError("malformed slot '" + std::string(whole) + "'");
            idx = idx * 10 + (s[j] - '0');
        }
        return {s.substr(0, i), idx};
    };

    auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        auto [word, idx] = split_index(spec);
        Slot slot;
        slot.index = idx;
        if (word == "int") slot.kind = Slot::Kind::IntLit;
        else slot.kind = column_kind_from_word(word);
        return slot;
    }

    auto [word, idx] = split_index(spec.substr(0, colon));
    if (word != "val")
        throw TemplateError("only val slots take a ':column' suffix: '" + std::string(whole) + "'");
    auto [ref_word, ref_idx] = split_index(spec.substr(colon + 1));
    Slot::Kind ref_kind = column_kind_from_word(ref_word);
    Slot slot;
    slot.kind = Slot::Kind::Val;
    slot.index = idx;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i].kind == ref_kind && seen[i].index == ref_idx) {
            slot.of_column_slot = static_cast<int>(i);
            return slot;
        }
    }
    throw TemplateError("dangling slot reference in '" + std::string(whole) +
                        "': no such column slot declared");
}

// Placeholder fillers used to check that the skeleton parses. AnyCol slots
// are modelled as text columns, which also rejects templates that would
// order-compare an arbitrary column.
struct DummyFiller {
    std::vector<std::string> headers;
    std::vector<ColumnType> types;

    SqlToken fill(const Slot& slot, const std::vector<Slot>& slots) {
        switch (slot.kind) {
            case Slot::Kind::IntLit: return SqlToken{TokKind::NumberLit, "1", 0, 0};
            case Slot::Kind::Val: {
                const Slot& col = slots[static_cast<std::size_t>(slot.of_column_slot)];
                if (col.kind == Slot::Kind::NumCol) return SqlToken{TokKind::NumberLit, "1", 0, 0};
                return SqlToken{TokKind::StringLit, "v", 0, 0};
            }
            default: {
                std::string name = header_for(slot);
                return SqlToken{TokKind::Identifier, name, 0, 0};
            }
        }
    }

    std::string header_for(const Slot& slot) {
        const char* prefix = slot.kind == Slot::Kind::NumCol ? "num_col_"
                             : slot.kind == Slot::Kind::TextCol ? "text_col_"
                                                                : "any_col_";
        std::string name = prefix + std::to_string(slot.index);
        if (std::find(headers.begin(), headers.end(), name) == headers.end()) {
            headers.push_back(name);
            types.push_back(slot.kind == Slot::Kind::NumCol ? ColumnType::Number
                                                            : ColumnType::Text);
        }
        return name;
    }
};

std::string render_token(const SqlToken& t) {
    switch (t.kind) {
        case TokKind::StringLit: {
            std::string out = "\"";
            for (char c : t.text) {
                if (c == '"') out += "\"\"";
                else out.push_back(c);
            }
            return out + "\"";
        }
        case TokKind::Identifier: {
            if (!identifier_needs_quotes(t.text)) return t.text;
            std::string out = "`";
            for (char c : t.text) {
                if (c == '`') out += "``";
                else out.push_back(c);
            }
            return out + "`";
        }
        default: return t.text;
    }
}

std::string render_tokens(const std::vector<SqlToken>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (t.kind == TokKind::End) continue;
        if (!out.empty()) out += ' ';
        out += render_token(t);
    }
    return out;
}

// Column slots are assigned in a fixed pass order: within each family,
// value-fed slots first (their pools are restricted to columns that have
// at least one non-empty cell), then the rest; numeric and text families
// before AnyCol, which draws from the leftovers of both.
std::vector<std::size_t> assignment_order(const std::vector<Slot>& slots,
                                          const std::vector<bool>& val_fed) {
    std::vector<std::size_t> order;
    auto add_family = [&](Slot::Kind kind) {
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i].kind == kind && val_fed[i]) order.push_back(i);
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i].kind == kind && !val_fed[i]) order.push_back(i);
    };
    add_family(Slot::Kind::NumCol);
    add_family(Slot::Kind::TextCol);
    add_family(Slot::Kind::AnyCol);
    return order;
}

std::vector<bool> value_fed_slots(const std::vector<Slot>& slots) {
    std::vector<bool> fed(slots.size(), false);
    for (const auto& s : slots)
        if (s.kind == Slot::Kind::Val) fed[static_cast<std::size_t>(s.of_column_slot)] = true;
    return fed;
}

bool column_has_value(const Table& t, std::size_t col) {
    for (std::size_t r = 0; r < t.num_rows(); ++r)
        if (!t.at(r, col).is_empty()) return true;
    return false;
}

// Worst-case feasibility of the column assignment. Sampling is uniform, so
// a non-value-fed slot may well take a value-bearing column that a later
// AnyCol slot needed; compatibility must hold for every sampling path, not
// just a lucky one. Counting per family suffices because pools within a
// family phase are interchangeable and AnyCol slots draw last.
bool assignable(const QueryTemplate& tpl, const Table& table) {
    auto val_fed = value_fed_slots(tpl.slots);
    std::size_t num_cols = 0, text_cols = 0, num_valful = 0, text_valful = 0;
    for (std::size_t c = 0; c < table.num_cols(); ++c) {
        bool valful = column_has_value(table, c);
        if (table.types[c] == ColumnType::Number) {
            ++num_cols;
            num_valful += valful;
        } else {
            ++text_cols;
            text_valful += valful;
        }
    }
    std::size_t nv = 0, no = 0, tv = 0, to = 0, av = 0, ao = 0;
    for (std::size_t i = 0; i < tpl.slots.size(); ++i) {
        switch (tpl.slots[i].kind) {
            case Slot::Kind::NumCol: ++(val_fed[i] ? nv : no); break;
            case Slot::Kind::TextCol: ++(val_fed[i] ? tv : to); break;
            case Slot::Kind::AnyCol: ++(val_fed[i] ? av : ao); break;
            default: break;
        }
    }
    if (nv > num_valful || nv + no > num_cols) return false;
    if (tv > text_valful || tv + to > text_cols) return false;
    std::size_t worst_valful_left =
        (num_valful > nv + no ? num_valful - nv - no : 0) +
        (text_valful > tv + to ? text_valful - tv - to : 0);
    if (av > worst_valful_left) return false;
    if (nv + no + tv + to + av + ao > table.num_cols()) return false;
    return true;
}

}  // namespace

QueryTemplate parse_template(std::string_view text, std::string template_id) {
    QueryTemplate tpl;
    tpl.template_id = std::move(template_id);
    tpl.text = std::string(text);

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t brace = text.find('{', pos);
        std::string_view chunk = text.substr(pos, (brace == std::string_view::npos ? text.size() : brace) - pos);
        if (!trim(chunk).empty()) {
            auto tokens = tokenize(chunk);
            for (auto& t : tokens) {
                if (t.kind == TokKind::End) break;
                tpl.skeleton.push_back(TemplateToken{false, std::move(t), -1});
            }
        }
        if (brace == std::string_view::npos) break;
        std::size_t close = text.find('}', brace);
        if (close == std::string_view::npos)
            throw TemplateError("unterminated slot in template: " + tpl.text);
        std::string_view spec = text.substr(brace + 1, close - brace - 1);
        Slot slot = parse_slot_spec(spec, tpl.slots, text.substr(brace, close - brace + 1));
        // Reuse the slot if this spec occurred before; otherwise declare it.
        int slot_index = -1;
        for (std::size_t i = 0; i < tpl.slots.size(); ++i) {
            if (tpl.slots[i] == slot) {
                slot_index = static_cast<int>(i);
                break;
            }
        }
        if (slot_index < 0) {
            tpl.slots.push_back(slot);
            slot_index = static_cast<int>(tpl.slots.size() - 1);
        }
        tpl.skeleton.push_back(TemplateToken{true, SqlToken{}, slot_index});
        pos = close + 1;
    }

    // Per-family indices must be contiguous from 1.
    std::map<Slot::Kind, std::vector<int>> family_indices;
    for (const auto& s : tpl.slots) family_indices[s.kind].push_back(s.index);
    for (auto& [kind, indices] : family_indices) {
        std::sort(indices.begin(), indices.end());
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] != static_cast<int>(i) + 1)
                throw TemplateError("slot indices must be contiguous from 1 in: " + tpl.text);
        }
    }

    // The skeleton must parse once slots are substituted.
    DummyFiller filler;
    std::vector<SqlToken> tokens;
    for (const auto& tt : tpl.skeleton)
        tokens.push_back(tt.is_slot ? filler.fill(tpl.slots[static_cast<std::size_t>(tt.slot_index)], tpl.slots)
                                    : tt.token);
    TableSchema dummy{filler.headers, filler.types};
    try {
        (void)parse(render_tokens(tokens), &dummy);
    } catch (const Error& e) {
        throw TemplateError("skeleton does not parse (" + std::string(e.what()) +
                            "): " + tpl.text);
    }
    return tpl;
}

std::vector<QueryTemplate> load_templates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<QueryTemplate> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        try {
            out.push_back(parse_template(t, "t" + std::to_string(out.size() + 1)));
        } catch (const TemplateError& e) {
            throw TemplateError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

bool compatible(const QueryTemplate& tpl, const Table& table) {
    bool needs_rows = false;
    for (const auto& s : tpl.slots)
        if (s.kind == Slot::Kind::Val || s.kind == Slot::Kind::IntLit) needs_rows = true;
    if (needs_rows && table.num_rows() == 0) return false;
    return assignable(tpl, table);
}

SqlQuery instantiate(const QueryTemplate& tpl, const Table& table, Rng& rng) {
    if (!compatible(tpl, table))
        throw IncompatibleError("template " + tpl.template_id + " does not fit table " + table.id);

    auto val_fed = value_fed_slots(tpl.slots);
    std::vector<std::size_t> columns(tpl.slots.size(), 0);
    std::vector<bool> used(table.num_cols(), false);

    for (std::size_t si : assignment_order(tpl.slots, val_fed)) {
        const Slot& slot = tpl.slots[si];
        std::vector<std::size_t> pool;
        for (std::size_t c = 0; c < table.num_cols(); ++c) {
            if (used[c]) continue;
            if (slot.kind == Slot::Kind::NumCol && table.types[c] != ColumnType::Number) continue;
            if (slot.kind == Slot::Kind::TextCol && table.types[c] != ColumnType::Text) continue;
            if (val_fed[si] && !column_has_value(table, c)) continue;
            pool.push_back(c);
        }
        if (pool.empty())
            throw IncompatibleError("no eligible column for a slot of template " + tpl.template_id);
        std::size_t pick = pool[static_cast<std::size_t>(rng.below(pool.size()))];
        columns[si] = pick;
        used[pick] = true;
    }

    std::vector<SqlToken> tokens;
    tokens.reserve(tpl.skeleton.size());
    for (const auto& tt : tpl.skeleton) {
        if (!tt.is_slot) {
            tokens.push_back(tt.token);
            continue;
        }
        const Slot& slot = tpl.slots[static_cast<std::size_t>(tt.slot_index)];
        switch (slot.kind) {
            case Slot::Kind::IntLit: {
                std::uint64_t v = 1 + rng.below(table.num_rows());
                tokens.push_back(SqlToken{TokKind::NumberLit, std::to_string(v), 0, 0});
                break;
            }
            case Slot::Kind::Val: {
                std::size_t col = columns[static_cast<std::size_t>(slot.of_column_slot)];
                std::vector<std::size_t> cells;
                for (std::size_t r = 0; r < table.num_rows(); ++r)
                    if (!table.at(r, col).is_empty()) cells.push_back(r);
                const CellValue& v =
                    table.at(cells[static_cast<std::size_t>(rng.below(cells.size()))], col);
                if (v.kind == CellKind::Number)
                    tokens.push_back(SqlToken{TokKind::NumberLit, v.num.str(), 0, 0});
                else
                    tokens.push_back(SqlToken{TokKind::StringLit, v.text, 0, 0});
                break;
            }
            default:
                tokens.push_back(
                    SqlToken{TokKind::Identifier, table.headers[columns[tt.slot_index]], 0, 0});
        }
    }

    TableSchema schema = TableSchema::of(table);
    return parse(render_tokens(tokens), &schema);
}

}  // namespace sqc
