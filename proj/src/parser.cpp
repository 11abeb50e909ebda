#include "sqc/parser.hpp"

#include <memory>

#include "sqc/errors.hpp"
#include "sqc/lexer.hpp"

namespace sqc {

std::optional<std::size_t> TableSchema::resolve(std::string_view name) const {
    std::optional<std::size_t> exact, folded_hit;
    std::string folded = fold_case(trim(name));
    int folded_count = 0;
    for (std::size_t i = 0; i < headers.size(); ++i) {
        if (headers[i] == name) exact = i;
        if (fold_case(headers[i]) == folded) {
            folded_hit = i;
            ++folded_count;
        }
    }
    if (exact) return exact;
    if (folded_count == 1) return folded_hit;
    return std::nullopt;  // unknown, or ambiguous without an exact match
}

namespace {

class Parser {
public:
    Parser(std::vector<SqlToken> tokens, const TableSchema* schema)
        : tokens_(std::move(tokens)), schema_(schema) {}

    SqlQuery parse_full() {
        SqlQuery q = parse_query();
        expect_end();
        return q;
    }

private:
    std::vector<SqlToken> tokens_;
    const TableSchema* schema_;
    std::size_t pos_ = 0;

    const SqlToken& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const SqlToken& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const SqlToken& t = peek();
        std::string got = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError("expected " + expected + ", got " + got + " at offset " +
                         std::to_string(t.begin));
    }

    bool at_keyword(std::string_view kw) const { return peek().is_keyword(kw); }

    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) fail(std::string("keyword ") + std::string(kw));
        advance();
    }

    bool accept_keyword(std::string_view kw) {
        if (!at_keyword(kw)) return false;
        advance();
        return true;
    }

    void expect_punct(char c) {
        if (peek().kind != TokKind::Punct || peek().text[0] != c)
            fail(std::string("'") + c + "'");
        advance();
    }

    bool accept_punct(char c) {
        if (peek().kind == TokKind::Punct && peek().text[0] == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect_end() {
        if (peek().kind != TokKind::End) fail("end of query");
    }

    static bool is_agg_keyword(const SqlToken& t) {
        return t.is_keyword("COUNT") || t.is_keyword("SUM") || t.is_keyword("AVG") ||
               t.is_keyword("MIN") || t.is_keyword("MAX");
    }

    std::optional<CmpOp> peek_cmp() const {
        if (peek().kind != TokKind::Operator) return std::nullopt;
        const std::string& s = peek().text;
        if (s == "=") return CmpOp::Eq;
        if (s == "!=") return CmpOp::Ne;
        if (s == ">") return CmpOp::Gt;
        if (s == ">=") return CmpOp::Ge;
        if (s == "<") return CmpOp::Lt;
        if (s == "<=") return CmpOp::Le;
        return std::nullopt;
    }

    SqlQuery parse_query() {
        expect_keyword("SELECT");
        SqlQuery q;
        if (peek().kind == TokKind::End || at_keyword("WHERE") || at_keyword("GROUP") ||
            at_keyword("ORDER") || at_keyword("LIMIT"))
            throw ParseError("empty projection at offset " + std::to_string(peek().begin));
        q.projection.push_back(parse_select_item());
        while (accept_punct(',')) q.projection.push_back(parse_select_item());
        if (accept_keyword("WHERE")) q.where = parse_condition();
        if (accept_keyword("GROUP")) {
            expect_keyword("BY");
            q.group_by = parse_column();
        }
        if (accept_keyword("ORDER")) {
            expect_keyword("BY");
            OrderBy ob;
            if (at_keyword("COUNT")) {
                advance();
                expect_punct('(');
                if (!(peek().kind == TokKind::Operator && peek().text == "*")) fail("'*'");
                advance();
                expect_punct(')');
                ob.key.count_star = true;
            } else {
                ob.key.col = parse_column();
            }
            if (accept_keyword("DESC")) ob.dir = SortDir::Desc;
            else if (accept_keyword("ASC")) ob.dir = SortDir::Asc;
            q.order_by = ob;
        }
        if (accept_keyword("LIMIT")) {
            if (peek().kind != TokKind::NumberLit) fail("a positive integer after LIMIT");
            auto d = Decimal::parse(peek().text);
            if (!d || !d->is_integer() || d->compare(Decimal::from_int(1)) < 0)
                throw ParseError("LIMIT must be a positive integer, got '" + peek().text +
                                 "' at offset " + std::to_string(peek().begin));
            q.limit = static_cast<std::int64_t>(d->to_double());
            advance();
        }
        validate(q);
        return q;
    }

    ColumnRef parse_column() {
        if (peek().kind != TokKind::Identifier) fail("a column name");
        ColumnRef c{advance().text};
        return c;
    }

    SelectItem parse_select_item() {
        if (peek().kind == TokKind::Identifier) {
            ColumnRef col = parse_column();
            if (peek_cmp())
                throw ParseError("a bare column cannot be compared at offset " +
                                 std::to_string(peek().begin));
            return SelectItem{col};
        }
        ScalarExpr lhs = parse_scalar_expr();
        if (auto cmp = peek_cmp()) {
            advance();
            ScalarExpr rhs = parse_scalar_expr();
            return SelectItem{BoolCompare{std::move(lhs), *cmp, std::move(rhs)}};
        }
        return SelectItem{std::move(lhs)};
    }

    // Precedence: * and / bind tighter than + and -; left-associative.
    ScalarExpr parse_scalar_expr() {
        ScalarExpr lhs = parse_scalar_term();
        while (peek().kind == TokKind::Operator &&
               (peek().text == "+" || peek().text == "-")) {
            ArithOp op = advance().text == "+" ? ArithOp::Add : ArithOp::Sub;
            ScalarExpr rhs = parse_scalar_term();
            lhs = ScalarExpr{ArithExpr{std::make_shared<ScalarExpr>(std::move(lhs)), op,
                                       std::make_shared<ScalarExpr>(std::move(rhs))}};
        }
        return lhs;
    }

    ScalarExpr parse_scalar_term() {
        ScalarExpr lhs = parse_scalar_factor();
        while (peek().kind == TokKind::Operator &&
               (peek().text == "*" || peek().text == "/")) {
            ArithOp op = advance().text == "*" ? ArithOp::Mul : ArithOp::Div;
            ScalarExpr rhs = parse_scalar_factor();
            lhs = ScalarExpr{ArithExpr{std::make_shared<ScalarExpr>(std::move(lhs)), op,
                                       std::make_shared<ScalarExpr>(std::move(rhs))}};
        }
        return lhs;
    }

    ScalarExpr parse_scalar_factor() {
        const SqlToken& t = peek();
        if (t.kind == TokKind::NumberLit) {
            advance();
            return ScalarExpr{Literal{CellValue::number(*Decimal::parse(t.text))}};
        }
        if (t.kind == TokKind::Operator && t.text == "-" && peek(1).kind == TokKind::NumberLit) {
            advance();
            const SqlToken& num = advance();
            return ScalarExpr{
                Literal{CellValue::number(*Decimal::parse("-" + num.text))}};
        }
        if (t.kind == TokKind::StringLit) {
            advance();
            return ScalarExpr{Literal{CellValue::of_text(t.text)}};
        }
        if (is_agg_keyword(t)) return ScalarExpr{parse_aggregate()};
        if (t.kind == TokKind::Punct && t.text == "(") {
            advance();
            if (at_keyword("SELECT")) {
                SqlQuery inner = parse_query();
                expect_punct(')');
                return normalize_subquery(std::move(inner));
            }
            ScalarExpr inner = parse_scalar_expr();
            expect_punct(')');
            return inner;
        }
        fail("a scalar expression");
    }

    // "(SELECT COUNT(DISTINCT Area))" and friends collapse to the inner
    // scalar; subqueries with clauses or column projections stay subqueries.
    static ScalarExpr normalize_subquery(SqlQuery inner) {
        if (!inner.where && !inner.group_by && !inner.order_by && !inner.limit &&
            inner.projection.size() == 1) {
            if (auto* s = std::get_if<ScalarExpr>(&inner.projection[0].node)) return *s;
        }
        return ScalarExpr{Subquery{std::make_shared<SqlQuery>(std::move(inner))}};
    }

    Aggregate parse_aggregate() {
        const SqlToken& fn_tok = advance();
        AggFn fn = AggFn::Count;
        if (fn_tok.is_keyword("COUNT")) fn = AggFn::Count;
        else if (fn_tok.is_keyword("SUM")) fn = AggFn::Sum;
        else if (fn_tok.is_keyword("AVG")) fn = AggFn::Avg;
        else if (fn_tok.is_keyword("MIN")) fn = AggFn::Min;
        else if (fn_tok.is_keyword("MAX")) fn = AggFn::Max;
        expect_punct('(');
        Aggregate agg;
        agg.fn = fn;
        if (accept_keyword("DISTINCT")) {
            if (fn != AggFn::Count)
                throw ParseError("DISTINCT is only supported under COUNT at offset " +
                                 std::to_string(fn_tok.begin));
            agg.distinct = true;
        }
        if (peek().kind == TokKind::Operator && peek().text == "*") {
            if (fn != AggFn::Count || agg.distinct)
                throw ParseError("'*' is only legal under plain COUNT at offset " +
                                 std::to_string(peek().begin));
            advance();
        } else {
            agg.target = parse_column();
        }
        expect_punct(')');
        return agg;
    }

    Condition parse_condition() { return parse_or(); }

    Condition parse_or() {
        Condition lhs = parse_and();
        while (accept_keyword("OR")) {
            Condition rhs = parse_and();
            lhs = Condition{OrCond{std::make_shared<Condition>(std::move(lhs)),
                                   std::make_shared<Condition>(std::move(rhs))}};
        }
        return lhs;
    }

    Condition parse_and() {
        Condition lhs = parse_cond_primary();
        while (accept_keyword("AND")) {
            Condition rhs = parse_cond_primary();
            lhs = Condition{AndCond{std::make_shared<Condition>(std::move(lhs)),
                                    std::make_shared<Condition>(std::move(rhs))}};
        }
        return lhs;
    }

    Condition parse_cond_primary() {
        if (accept_keyword("NOT")) {
            Condition inner = parse_cond_primary();
            return Condition{NotCond{std::make_shared<Condition>(std::move(inner))}};
        }
        if (peek().kind == TokKind::Punct && peek().text == "(") {
            advance();
            Condition inner = parse_condition();
            expect_punct(')');
            return inner;
        }
        return parse_predicate();
    }

    Literal parse_literal() {
        const SqlToken& t = peek();
        if (t.kind == TokKind::NumberLit) {
            advance();
            return Literal{CellValue::number(*Decimal::parse(t.text))};
        }
        if (t.kind == TokKind::Operator && t.text == "-" && peek(1).kind == TokKind::NumberLit) {
            advance();
            const SqlToken& num = advance();
            return Literal{CellValue::number(*Decimal::parse("-" + num.text))};
        }
        if (t.kind == TokKind::StringLit) {
            advance();
            return Literal{CellValue::of_text(t.text)};
        }
        fail("a literal");
    }

    Condition parse_predicate() {
        ColumnRef col = parse_column();
        if (accept_keyword("IN")) {
            expect_punct('(');
            InList in{std::move(col), {}};
            in.values.push_back(parse_literal());
            while (accept_punct(',')) in.values.push_back(parse_literal());
            expect_punct(')');
            return Condition{std::move(in)};
        }
        auto cmp = peek_cmp();
        if (!cmp) fail("a comparison operator or IN");
        advance();
        Compare comp;
        comp.col = std::move(col);
        comp.op = *cmp;
        if (peek().kind == TokKind::Punct && peek().text == "(") {
            advance();
            if (!at_keyword("SELECT")) fail("a subquery");
            SqlQuery inner = parse_query();
            expect_punct(')');
            comp.rhs = Subquery{std::make_shared<SqlQuery>(std::move(inner))};
        } else {
            comp.rhs = parse_literal();
        }
        return Condition{std::move(comp)};
    }

    // Structural checks that do not need a schema.
    void validate(const SqlQuery& q) const {
        bool has_bool = false, has_column = false, has_scalar = false;
        for (const auto& item : q.projection) {
            if (std::holds_alternative<BoolCompare>(item.node)) has_bool = true;
            else if (std::holds_alternative<ColumnRef>(item.node)) has_column = true;
            else has_scalar = true;
        }
        if (has_bool && q.projection.size() > 1)
            throw ParseError("a boolean comparison must be the only projection item");
        if (has_bool && (q.where || q.group_by || q.order_by || q.limit))
            throw ParseError("a boolean projection does not take query clauses");
        if (q.group_by) {
            for (const auto& item : q.projection) {
                if (const auto* col = std::get_if<ColumnRef>(&item.node)) {
                    if (fold_case(col->name) != fold_case(q.group_by->name))
                        throw ParseError("projected column '" + col->name +
                                         "' must equal the GROUP BY column");
                } else if (const auto* sc = std::get_if<ScalarExpr>(&item.node)) {
                    if (!is_groupable_scalar(*sc))
                        throw ParseError(
                            "grouped projections must be the grouped column or aggregates");
                }
            }
            if (q.order_by && !q.order_by->key.count_star)
                throw ParseError("ORDER BY in a grouped query must be COUNT(*)");
        } else {
            if (has_column && has_scalar)
                throw ParseError("mixing columns and aggregates requires GROUP BY");
            if (q.order_by && q.order_by->key.count_star)
                throw ParseError("ORDER BY COUNT(*) requires GROUP BY");
        }
    }

    static bool is_groupable_scalar(const ScalarExpr& e) {
        if (std::holds_alternative<Aggregate>(e.node)) return true;
        if (const auto* a = std::get_if<ArithExpr>(&e.node))
            return is_groupable_scalar(*a->lhs) && is_groupable_scalar(*a->rhs);
        if (std::holds_alternative<Literal>(e.node)) return true;
        return false;  // subqueries in grouped projections are out of dialect
    }
};

class Binder {
public:
    explicit Binder(const TableSchema& schema) : schema_(schema) {}

    void bind(const SqlQuery& q) {
        for (const auto& item : q.projection) {
            if (const auto* col = std::get_if<ColumnRef>(&item.node)) resolve(*col);
            else if (const auto* sc = std::get_if<ScalarExpr>(&item.node)) bind_scalar(*sc);
            else if (const auto* bc = std::get_if<BoolCompare>(&item.node)) {
                bind_scalar(bc->lhs);
                bind_scalar(bc->rhs);
            }
        }
        if (q.where) bind_condition(*q.where);
        if (q.group_by) resolve(*q.group_by);
        if (q.order_by && !q.order_by->key.count_star) resolve(q.order_by->key.col);
    }

private:
    const TableSchema& schema_;

    std::size_t resolve(const ColumnRef& col) {
        auto idx = schema_.resolve(col.name);
        if (!idx) throw BindError("unknown column '" + col.name + "'");
        return *idx;
    }

    void bind_scalar(const ScalarExpr& e) {
        if (const auto* agg = std::get_if<Aggregate>(&e.node)) {
            if (agg->target) resolve(*agg->target);
        } else if (const auto* a = std::get_if<ArithExpr>(&e.node)) {
            bind_scalar(*a->lhs);
            bind_scalar(*a->rhs);
        } else if (const auto* s = std::get_if<Subquery>(&e.node)) {
            bind(*s->query);
        }
    }

    void bind_condition(const Condition& c) {
        if (const auto* cmp = std::get_if<Compare>(&c.node)) {
            std::size_t idx = resolve(cmp->col);
            if (schema_.types[idx] == ColumnType::Text && cmp->op != CmpOp::Eq &&
                cmp->op != CmpOp::Ne)
                throw BindError("type-illegal comparison: text column '" + cmp->col.name +
                                "' admits only = and !=");
            if (const auto* sq = std::get_if<Subquery>(&cmp->rhs)) bind(*sq->query);
        } else if (const auto* in = std::get_if<InList>(&c.node)) {
            resolve(in->col);
        } else if (const auto* a = std::get_if<AndCond>(&c.node)) {
            bind_condition(*a->lhs);
            bind_condition(*a->rhs);
        } else if (const auto* o = std::get_if<OrCond>(&c.node)) {
            bind_condition(*o->lhs);
            bind_condition(*o->rhs);
        } else if (const auto* n = std::get_if<NotCond>(&c.node)) {
            bind_condition(*n->inner);
        }
    }
};

}  // namespace

SqlQuery parse(std::string_view sql, const TableSchema* schema) {
    auto tokens = tokenize(sql, schema ? &schema->headers : nullptr);
    Parser parser(std::move(tokens), schema);
    SqlQuery q = parser.parse_full();
    if (schema) bind_query(q, *schema);
    return q;
}

void bind_query(const SqlQuery& query, const TableSchema& schema) {
    Binder(schema).bind(query);
}

}  // namespace sqc
