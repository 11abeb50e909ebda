#include "sqc/printer.hpp"

#include <sstream>

#include "sqc/lexer.hpp"

namespace sqc {

bool identifier_needs_quotes(const std::string& name) {
    if (name.empty()) return true;
    if (is_keyword_word(name)) return true;
    if (Decimal::parse(name)) return true;  // would re-lex as a number
    for (char c : name) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '#' || c == '.';
        if (!ok) return true;
    }
    return false;
}

namespace {

std::string quote_identifier(const std::string& name) {
    if (!identifier_needs_quotes(name)) return name;
    std::string out = "`";
    for (char c : name) {
        if (c == '`') out += "``";
        else out.push_back(c);
    }
    out += "`";
    return out;
}

std::string quote_string(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string print_literal(const Literal& lit) {
    if (lit.value.kind == CellKind::Number) return lit.value.num.str();
    return quote_string(lit.value.text);
}

std::string print_query(const SqlQuery& q);

int arith_precedence(ArithOp op) {
    return op == ArithOp::Mul || op == ArithOp::Div ? 2 : 1;
}

std::string print_scalar(const ScalarExpr& e, int parent_prec = 0, bool right_operand = false) {
    if (const auto* lit = std::get_if<Literal>(&e.node)) return print_literal(*lit);
    if (const auto* agg = std::get_if<Aggregate>(&e.node)) {
        std::string out = agg_fn_name(agg->fn);
        out += "(";
        if (agg->distinct) out += "DISTINCT ";
        out += agg->target ? quote_identifier(agg->target->name) : "*";
        out += ")";
        return out;
    }
    if (const auto* sub = std::get_if<Subquery>(&e.node))
        return "(" + print_query(*sub->query) + ")";
    const auto& a = std::get<ArithExpr>(e.node);
    int prec = arith_precedence(a.op);
    std::string text = print_scalar(*a.lhs, prec, false) + " " + arith_op_symbol(a.op) + " " +
                       print_scalar(*a.rhs, prec, true);
    // Parenthesize when this node binds looser than the parent, or when it
    // sits as the right operand at equal precedence (operators are
    // left-associative, so the structure would be lost otherwise).
    bool need_parens = false;
    if (parent_prec > 0) need_parens = prec < parent_prec || (prec == parent_prec && right_operand);
    return need_parens ? "(" + text + ")" : text;
}

int cond_precedence(const Condition& c) {
    if (std::holds_alternative<OrCond>(c.node)) return 1;
    if (std::holds_alternative<AndCond>(c.node)) return 2;
    return 3;  // NOT and leaves
}

std::string print_condition(const Condition& c, int parent_prec = 0, bool right_operand = false) {
    std::string text;
    int prec = cond_precedence(c);
    if (const auto* cmp = std::get_if<Compare>(&c.node)) {
        text = quote_identifier(cmp->col.name);
        text += " ";
        text += cmp_op_symbol(cmp->op);
        text += " ";
        if (const auto* lit = std::get_if<Literal>(&cmp->rhs)) text += print_literal(*lit);
        else text += "(" + print_query(*std::get<Subquery>(cmp->rhs).query) + ")";
    } else if (const auto* in = std::get_if<InList>(&c.node)) {
        text = quote_identifier(in->col.name) + " IN (";
        for (std::size_t i = 0; i < in->values.size(); ++i) {
            if (i) text += ", ";
            text += print_literal(in->values[i]);
        }
        text += ")";
    } else if (const auto* a = std::get_if<AndCond>(&c.node)) {
        text = print_condition(*a->lhs, prec, false) + " AND " +
               print_condition(*a->rhs, prec, true);
    } else if (const auto* o = std::get_if<OrCond>(&c.node)) {
        text = print_condition(*o->lhs, prec, false) + " OR " +
               print_condition(*o->rhs, prec, true);
    } else {
        const auto& n = std::get<NotCond>(c.node);
        std::string inner = print_condition(*n.inner, prec, false);
        if (cond_precedence(*n.inner) < prec || !std::holds_alternative<Compare>(n.inner->node))
            text = "NOT (" + inner + ")";
        else
            text = "NOT " + inner;
        return text;
    }
    bool need_parens = parent_prec > 0 && (prec < parent_prec ||
                                           (prec == parent_prec && right_operand &&
                                            (std::holds_alternative<AndCond>(c.node) ||
                                             std::holds_alternative<OrCond>(c.node))));
    return need_parens ? "(" + text + ")" : text;
}

std::string print_query(const SqlQuery& q) {
    std::ostringstream out;
    out << "SELECT ";
    for (std::size_t i = 0; i < q.projection.size(); ++i) {
        if (i) out << ", ";
        const auto& item = q.projection[i];
        if (const auto* col = std::get_if<ColumnRef>(&item.node)) {
            out << quote_identifier(col->name);
        } else if (const auto* sc = std::get_if<ScalarExpr>(&item.node)) {
            out << print_scalar(*sc);
        } else {
            const auto& bc = std::get<BoolCompare>(item.node);
            out << print_scalar(bc.lhs) << " " << cmp_op_symbol(bc.op) << " "
                << print_scalar(bc.rhs);
        }
    }
    if (q.where) out << " WHERE " << print_condition(*q.where);
    if (q.group_by) out << " GROUP BY " << quote_identifier(q.group_by->name);
    if (q.order_by) {
        out << " ORDER BY ";
        if (q.order_by->key.count_star) out << "COUNT(*)";
        else out << quote_identifier(q.order_by->key.col.name);
        out << (q.order_by->dir == SortDir::Desc ? " DESC" : " ASC");
    }
    if (q.limit) out << " LIMIT " << *q.limit;
    return out.str();
}

void stream_query(const SqlQuery& q, std::vector<std::string>& out);

void stream_scalar(const ScalarExpr& e, std::vector<std::string>& out) {
    if (const auto* lit = std::get_if<Literal>(&e.node)) {
        out.push_back(lit->value.display());
    } else if (const auto* agg = std::get_if<Aggregate>(&e.node)) {
        out.push_back(agg_fn_name(agg->fn));
        if (agg->distinct) out.push_back("DISTINCT");
        if (agg->target) out.push_back(agg->target->name);
    } else if (const auto* a = std::get_if<ArithExpr>(&e.node)) {
        stream_scalar(*a->lhs, out);
        out.push_back(std::string(1, arith_op_symbol(a->op)));
        stream_scalar(*a->rhs, out);
    } else {
        stream_query(*std::get<Subquery>(e.node).query, out);
    }
}

void stream_condition(const Condition& c, std::vector<std::string>& out) {
    if (const auto* cmp = std::get_if<Compare>(&c.node)) {
        out.push_back(cmp->col.name);
        out.push_back(cmp_op_symbol(cmp->op));
        if (const auto* lit = std::get_if<Literal>(&cmp->rhs))
            out.push_back(lit->value.display());
        else
            stream_query(*std::get<Subquery>(cmp->rhs).query, out);
    } else if (const auto* in = std::get_if<InList>(&c.node)) {
        out.push_back(in->col.name);
        out.push_back("IN");
        for (const auto& v : in->values) out.push_back(v.value.display());
    } else if (const auto* a = std::get_if<AndCond>(&c.node)) {
        stream_condition(*a->lhs, out);
        out.push_back("AND");
        stream_condition(*a->rhs, out);
    } else if (const auto* o = std::get_if<OrCond>(&c.node)) {
        stream_condition(*o->lhs, out);
        out.push_back("OR");
        stream_condition(*o->rhs, out);
    } else {
        out.push_back("NOT");
        stream_condition(*std::get<NotCond>(c.node).inner, out);
    }
}

void stream_query(const SqlQuery& q, std::vector<std::string>& out) {
    out.push_back("SELECT");
    for (const auto& item : q.projection) {
        if (const auto* col = std::get_if<ColumnRef>(&item.node)) {
            out.push_back(col->name);
        } else if (const auto* sc = std::get_if<ScalarExpr>(&item.node)) {
            stream_scalar(*sc, out);
        } else {
            const auto& bc = std::get<BoolCompare>(item.node);
            stream_scalar(bc.lhs, out);
            out.push_back(cmp_op_symbol(bc.op));
            stream_scalar(bc.rhs, out);
        }
    }
    if (q.where) {
        out.push_back("WHERE");
        stream_condition(*q.where, out);
    }
    if (q.group_by) {
        out.push_back("GROUP");
        out.push_back("BY");
        out.push_back(q.group_by->name);
    }
    if (q.order_by) {
        out.push_back("ORDER");
        out.push_back("BY");
        if (q.order_by->key.count_star) out.push_back("COUNT");
        else out.push_back(q.order_by->key.col.name);
        out.push_back(q.order_by->dir == SortDir::Desc ? "DESC" : "ASC");
    }
    if (q.limit) {
        out.push_back("LIMIT");
        out.push_back(std::to_string(*q.limit));
    }
}

}  // namespace

std::string print_canonical(const SqlQuery& query) { return print_query(query); }

std::vector<std::string> element_stream(const SqlQuery& query) {
    std::vector<std::string> out;
    stream_query(query, out);
    return out;
}

}  // namespace sqc
