#include "sqc/executor.hpp"

#include <algorithm>
#include <unordered_set>

#include "sqc/errors.hpp"
#include "sqc/parser.hpp"

namespace sqc {

bool Denotation::operator==(const Denotation& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::List: return values == o.values;
        case Kind::Scalar: return scalar == o.scalar;
        case Kind::Boolean: return boolean == o.boolean;
    }
    return false;
}

std::string render_denotation(const Denotation& d, std::string_view separator) {
    switch (d.kind) {
        case Denotation::Kind::Boolean: return d.boolean ? "1" : "0";
        case Denotation::Kind::Scalar: return d.scalar.display();
        case Denotation::Kind::List: {
            std::string out;
            for (std::size_t i = 0; i < d.values.size(); ++i) {
                if (i) out += separator;
                out += d.values[i].display();
            }
            return out;
        }
    }
    return "";
}

namespace {

// Key used for case-insensitive grouping / distinctness: numbers by their
// canonical digits, text by the folded trimmed string.
std::string equality_key(const CellValue& v) {
    switch (v.kind) {
        case CellKind::Empty: return "";
        case CellKind::Number: return v.num.str();
        case CellKind::Text: return fold_case(trim(v.text));
    }
    return "";
}

class Executor {
public:
    Executor(const SqlQuery& query, const Table& table)
        : query_(query), table_(table), schema_(TableSchema::of(table)) {}

    Denotation run() {
        bind_query(query_, schema_);

        std::vector<std::size_t> rows = filtered_rows();

        if (query_.group_by) return run_grouped(rows);

        if (query_.order_by) sort_rows(rows, query_.order_by->key.col, query_.order_by->dir);
        if (query_.limit && rows.size() > static_cast<std::size_t>(*query_.limit))
            rows.resize(static_cast<std::size_t>(*query_.limit));

        // Boolean projection.
        if (const auto* bc = std::get_if<BoolCompare>(&query_.projection[0].node)) {
            CellValue lhs = eval_scalar(bc->lhs, rows);
            CellValue rhs = eval_scalar(bc->rhs, rows);
            return Denotation::of_bool(compare_values(lhs, bc->op, rhs));
        }

        bool all_scalars = true;
        for (const auto& item : query_.projection)
            if (std::holds_alternative<ColumnRef>(item.node)) all_scalars = false;

        if (all_scalars) {
            std::vector<CellValue> vals;
            for (const auto& item : query_.projection)
                vals.push_back(eval_scalar(std::get<ScalarExpr>(item.node), rows));
            if (vals.size() == 1) return Denotation::of_scalar(std::move(vals[0]));
            return Denotation::list(std::move(vals));
        }

        // Plain column projection, row-major.
        std::vector<std::size_t> cols;
        for (const auto& item : query_.projection) {
            const auto* col = std::get_if<ColumnRef>(&item.node);
            if (!col) throw BindError("mixing columns and aggregates requires GROUP BY");
            cols.push_back(resolve(*col));
        }
        std::vector<CellValue> out;
        out.reserve(rows.size() * cols.size());
        for (std::size_t r : rows)
            for (std::size_t c : cols) out.push_back(table_.at(r, c));
        return Denotation::list(std::move(out));
    }

private:
    const SqlQuery& query_;
    const Table& table_;
    TableSchema schema_;

    std::size_t resolve(const ColumnRef& col) const {
        auto idx = schema_.resolve(col.name);
        if (!idx) throw BindError("unknown column '" + col.name + "'");
        return *idx;
    }

    // ---- filtering ----------------------------------------------------

    std::vector<std::size_t> filtered_rows() const {
        std::vector<std::size_t> rows;
        rows.reserve(table_.num_rows());
        for (std::size_t r = 0; r < table_.num_rows(); ++r)
            if (!query_.where || eval_condition(*query_.where, r)) rows.push_back(r);
        return rows;
    }

    bool eval_condition(const Condition& c, std::size_t row) const {
        if (const auto* cmp = std::get_if<Compare>(&c.node)) return eval_compare(*cmp, row);
        if (const auto* in = std::get_if<InList>(&c.node)) {
            const CellValue& cell = table_.at(row, resolve(in->col));
            for (const auto& lit : in->values)
                if (cell_matches(cell, CmpOp::Eq, lit.value)) return true;
            return false;
        }
        if (const auto* a = std::get_if<AndCond>(&c.node))
            return eval_condition(*a->lhs, row) && eval_condition(*a->rhs, row);
        if (const auto* o = std::get_if<OrCond>(&c.node))
            return eval_condition(*o->lhs, row) || eval_condition(*o->rhs, row);
        return !eval_condition(*std::get<NotCond>(c.node).inner, row);
    }

    bool eval_compare(const Compare& cmp, std::size_t row) const {
        const CellValue& cell = table_.at(row, resolve(cmp.col));
        CellValue rhs;
        if (const auto* lit = std::get_if<Literal>(&cmp.rhs)) {
            rhs = lit->value;
        } else {
            // Scalar subqueries evaluate against the full table, once.
            rhs = scalar_subquery_value(*std::get<Subquery>(cmp.rhs).query);
        }
        return cell_matches(cell, cmp.op, rhs);
    }

    // Two-valued predicate semantics: an empty cell satisfies nothing.
    // Text equality is case-insensitive after trimming; a number compared
    // to a text literal numerically parses the literal or fails the row.
    bool cell_matches(const CellValue& cell, CmpOp op, const CellValue& rhs) const {
        if (cell.is_empty() || rhs.is_empty()) return false;
        if (cell.kind == CellKind::Number) {
            Decimal rv;
            if (rhs.kind == CellKind::Number) {
                rv = rhs.num;
            } else {
                auto parsed = Decimal::parse_lenient(rhs.text);
                if (!parsed) return false;
                rv = *parsed;
            }
            return apply_cmp(cell.num.compare(rv), op);
        }
        // Text column: = / != only (enforced at bind time).
        std::string lhs_key = fold_case(trim(cell.text));
        std::string rhs_key = fold_case(trim(rhs.display()));
        bool eq = lhs_key == rhs_key;
        return op == CmpOp::Eq ? eq : !eq;
    }

    static bool apply_cmp(int cmp, CmpOp op) {
        switch (op) {
            case CmpOp::Eq: return cmp == 0;
            case CmpOp::Ne: return cmp != 0;
            case CmpOp::Gt: return cmp > 0;
            case CmpOp::Ge: return cmp >= 0;
            case CmpOp::Lt: return cmp < 0;
            case CmpOp::Le: return cmp <= 0;
        }
        return false;
    }

    // ---- scalar evaluation --------------------------------------------

    CellValue scalar_subquery_value(const SqlQuery& sub) const {
        Denotation d = Executor(sub, table_).run();
        switch (d.kind) {
            case Denotation::Kind::Scalar: return d.scalar;
            case Denotation::Kind::Boolean:
                throw TypeError("boolean subquery used as a scalar");
            case Denotation::Kind::List:
                if (d.values.size() != 1)
                    throw CardinalityError("scalar subquery returned " +
                                           std::to_string(d.values.size()) + " values");
                return d.values[0];
        }
        throw TypeError("unreachable");
    }

    CellValue eval_scalar(const ScalarExpr& e, const std::vector<std::size_t>& rows) const {
        if (const auto* lit = std::get_if<Literal>(&e.node)) return lit->value;
        if (const auto* agg = std::get_if<Aggregate>(&e.node)) return eval_aggregate(*agg, rows);
        if (const auto* sub = std::get_if<Subquery>(&e.node))
            return scalar_subquery_value(*sub->query);
        const auto& a = std::get<ArithExpr>(e.node);
        return eval_arith(a, rows);
    }

    Decimal numeric_operand(const CellValue& v, const char* what) const {
        if (v.kind == CellKind::Number) return v.num;
        if (v.kind == CellKind::Text) {
            auto parsed = Decimal::parse_lenient(v.text);
            if (parsed) return *parsed;
        }
        throw TypeError(std::string("non-numeric operand in ") + what);
    }

    CellValue eval_arith(const ArithExpr& a, const std::vector<std::size_t>& rows) const {
        Decimal lhs = numeric_operand(eval_scalar(*a.lhs, rows), "arithmetic");
        Decimal rhs = numeric_operand(eval_scalar(*a.rhs, rows), "arithmetic");
        switch (a.op) {
            case ArithOp::Add: return CellValue::number(lhs.add(rhs));
            case ArithOp::Sub: return CellValue::number(lhs.sub(rhs));
            case ArithOp::Mul: return CellValue::number(lhs.mul(rhs));
            case ArithOp::Div:
                if (rhs.is_zero()) throw DivByZeroError("division by zero");
                return CellValue::number(Decimal::from_double(lhs.to_double() / rhs.to_double()));
        }
        throw TypeError("unreachable");
    }

    CellValue eval_aggregate(const Aggregate& agg, const std::vector<std::size_t>& rows) const {
        if (!agg.target) {  // COUNT(*)
            return CellValue::number(Decimal::from_int(static_cast<std::int64_t>(rows.size())));
        }
        std::size_t col = resolve(*agg.target);
        if (agg.fn == AggFn::Count) {
            if (agg.distinct) {
                std::unordered_set<std::string> keys;
                for (std::size_t r : rows) {
                    const CellValue& v = table_.at(r, col);
                    if (!v.is_empty()) keys.insert(equality_key(v));
                }
                return CellValue::number(Decimal::from_int(static_cast<std::int64_t>(keys.size())));
            }
            std::int64_t n = 0;
            for (std::size_t r : rows)
                if (!table_.at(r, col).is_empty()) ++n;
            return CellValue::number(Decimal::from_int(n));
        }

        if (schema_.types[col] != ColumnType::Number)
            throw TypeError(std::string(agg_fn_name(agg.fn)) + " over a text column '" +
                            agg.target->name + "'");
        std::vector<Decimal> vals;
        for (std::size_t r : rows) {
            const CellValue& v = table_.at(r, col);
            if (!v.is_empty()) vals.push_back(v.num);
        }
        if (vals.empty()) {
            // The dialect has no NULL; an aggregate over nothing is an error
            // and the pipeline discards the query.
            if (agg.fn == AggFn::Avg) throw DivByZeroError("AVG over zero rows");
            throw CardinalityError(std::string(agg_fn_name(agg.fn)) + " over zero cells");
        }
        switch (agg.fn) {
            case AggFn::Sum: {
                Decimal total = vals[0];
                for (std::size_t i = 1; i < vals.size(); ++i) total = total.add(vals[i]);
                return CellValue::number(total);
            }
            case AggFn::Avg: {
                Decimal total = vals[0];
                for (std::size_t i = 1; i < vals.size(); ++i) total = total.add(vals[i]);
                return CellValue::number(Decimal::from_double(
                    total.to_double() / static_cast<double>(vals.size())));
            }
            case AggFn::Min: {
                Decimal best = vals[0];
                for (const auto& v : vals)
                    if (v.compare(best) < 0) best = v;
                return CellValue::number(best);
            }
            case AggFn::Max: {
                Decimal best = vals[0];
                for (const auto& v : vals)
                    if (v.compare(best) > 0) best = v;
                return CellValue::number(best);
            }
            default: break;
        }
        throw TypeError("unreachable");
    }

    // Boolean projection comparison over scalar values.
    bool compare_values(const CellValue& lhs, CmpOp op, const CellValue& rhs) const {
        if (lhs.is_empty() || rhs.is_empty()) return false;
        if (lhs.kind == CellKind::Number || rhs.kind == CellKind::Number) {
            auto as_num = [](const CellValue& v) -> std::optional<Decimal> {
                if (v.kind == CellKind::Number) return v.num;
                return Decimal::parse_lenient(v.text);
            };
            auto ln = as_num(lhs), rn = as_num(rhs);
            if (!ln || !rn) {
                if (op == CmpOp::Eq) return false;
                if (op == CmpOp::Ne) return true;
                throw TypeError("ordered comparison between number and non-numeric text");
            }
            return apply_cmp(ln->compare(*rn), op);
        }
        std::string a = fold_case(trim(lhs.text)), b = fold_case(trim(rhs.text));
        if (op == CmpOp::Eq) return a == b;
        if (op == CmpOp::Ne) return a != b;
        throw TypeError("ordered comparison between text values");
    }

    // ---- ordering ------------------------------------------------------

    // Stable sort on the column's total order (empty first, numbers by
    // value, text case-insensitively); ties keep original row order.
    void sort_rows(std::vector<std::size_t>& rows, const ColumnRef& key, SortDir dir) const {
        std::size_t col = resolve(key);
        std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
            int c = compare_cells(table_.at(a, col), table_.at(b, col));
            return dir == SortDir::Asc ? c < 0 : c > 0;
        });
    }

    // ---- grouping -------------------------------------------------------

    Denotation run_grouped(const std::vector<std::size_t>& rows) {
        std::size_t group_col = resolve(*query_.group_by);

        // Partition by display-value key, first-occurrence order.
        std::vector<std::string> keys;
        std::vector<std::vector<std::size_t>> groups;
        for (std::size_t r : rows) {
            std::string key = equality_key(table_.at(r, group_col));
            auto it = std::find(keys.begin(), keys.end(), key);
            if (it == keys.end()) {
                keys.push_back(std::move(key));
                groups.emplace_back();
                groups.back().push_back(r);
            } else {
                groups[static_cast<std::size_t>(it - keys.begin())].push_back(r);
            }
        }

        std::vector<std::size_t> order(groups.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        if (query_.order_by) {  // validated: ORDER BY COUNT(*)
            SortDir dir = query_.order_by->dir;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return dir == SortDir::Asc ? groups[a].size() < groups[b].size()
                                           : groups[a].size() > groups[b].size();
            });
        }
        if (query_.limit && order.size() > static_cast<std::size_t>(*query_.limit))
            order.resize(static_cast<std::size_t>(*query_.limit));

        std::vector<CellValue> out;
        for (std::size_t gi : order) {
            const auto& group = groups[gi];
            for (const auto& item : query_.projection) {
                if (const auto* col = std::get_if<ColumnRef>(&item.node)) {
                    // Representative: the group's first row in table order.
                    out.push_back(table_.at(group.front(), resolve(*col)));
                } else {
                    out.push_back(eval_scalar(std::get<ScalarExpr>(item.node), group));
                }
            }
        }
        return Denotation::list(std::move(out));
    }
};

}  // namespace

Denotation execute(const SqlQuery& query, const Table& table) {
    return Executor(query, table).run();
}

}  // namespace sqc
