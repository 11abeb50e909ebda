#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqc/cell.hpp"

namespace sqc {

struct SqlQuery;
using QueryPtr = std::shared_ptr<const SqlQuery>;

enum class AggFn { Count, Sum, Avg, Min, Max };
enum class CmpOp { Eq, Ne, Gt, Ge, Lt, Le };
enum class ArithOp { Add, Sub, Mul, Div };
enum class SortDir { Asc, Desc };

const char* agg_fn_name(AggFn fn);
const char* cmp_op_symbol(CmpOp op);
char arith_op_symbol(ArithOp op);

struct ColumnRef {
    std::string name;
    bool operator==(const ColumnRef&) const = default;
};

// Number or Text; equality is structural (case- and space-preserving).
struct Literal {
    CellValue value;
    bool operator==(const Literal&) const = default;
};

struct ScalarExpr;
using ScalarPtr = std::shared_ptr<const ScalarExpr>;

struct Aggregate {
    AggFn fn = AggFn::Count;
    std::optional<ColumnRef> target;  // nullopt = '*', COUNT only
    bool distinct = false;
    bool operator==(const Aggregate&) const = default;
};

struct ArithExpr {
    ScalarPtr lhs;
    ArithOp op = ArithOp::Add;
    ScalarPtr rhs;
    bool operator==(const ArithExpr& o) const;
};

struct Subquery {
    QueryPtr query;
    bool operator==(const Subquery& o) const;
};

// Scalar-valued expression: a literal, an aggregate, arithmetic over
// scalars, or a scalar subquery. Bare multi-row columns are not scalars.
struct ScalarExpr {
    std::variant<Literal, Aggregate, ArithExpr, Subquery> node;
    bool operator==(const ScalarExpr&) const = default;
};

// Top-level boolean projection, e.g. "SELECT COUNT(DISTINCT Area) >= 5".
struct BoolCompare {
    ScalarExpr lhs;
    CmpOp op = CmpOp::Eq;
    ScalarExpr rhs;
    bool operator==(const BoolCompare&) const = default;
};

struct SelectItem {
    std::variant<ColumnRef, ScalarExpr, BoolCompare> node;
    bool operator==(const SelectItem&) const = default;
};

struct Condition;
using CondPtr = std::shared_ptr<const Condition>;

struct Compare {
    ColumnRef col;
    CmpOp op = CmpOp::Eq;
    std::variant<Literal, Subquery> rhs;
    bool operator==(const Compare&) const = default;
};

struct InList {
    ColumnRef col;
    std::vector<Literal> values;  // non-empty
    bool operator==(const InList&) const = default;
};

struct AndCond {
    CondPtr lhs, rhs;
    bool operator==(const AndCond& o) const;
};

struct OrCond {
    CondPtr lhs, rhs;
    bool operator==(const OrCond& o) const;
};

struct NotCond {
    CondPtr inner;
    bool operator==(const NotCond& o) const;
};

struct Condition {
    std::variant<Compare, InList, AndCond, OrCond, NotCond> node;
    bool operator==(const Condition&) const = default;
};

struct OrderKey {
    bool count_star = false;  // ORDER BY COUNT(*); grouped queries only
    ColumnRef col;            // valid iff !count_star
    bool operator==(const OrderKey&) const = default;
};

struct OrderBy {
    OrderKey key;
    SortDir dir = SortDir::Asc;
    bool operator==(const OrderBy&) const = default;
};

struct SqlQuery {
    std::vector<SelectItem> projection;  // non-empty
    std::optional<Condition> where;
    std::optional<ColumnRef> group_by;
    std::optional<OrderBy> order_by;
    std::optional<std::int64_t> limit;  // >= 1 when present
    bool operator==(const SqlQuery&) const = default;
};

}  // namespace sqc
