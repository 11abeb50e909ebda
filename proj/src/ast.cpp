#include "sqc/ast.hpp"

namespace sqc {

const char* agg_fn_name(AggFn fn) {
    switch (fn) {
        case AggFn::Count: return "COUNT";
        case AggFn::Sum: return "SUM";
        case AggFn::Avg: return "AVG";
        case AggFn::Min: return "MIN";
        case AggFn::Max: return "MAX";
    }
    return "";
}

const char* cmp_op_symbol(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
    }
    return "";
}

char arith_op_symbol(ArithOp op) {
    switch (op) {
        case ArithOp::Add: return '+';
        case ArithOp::Sub: return '-';
        case ArithOp::Mul: return '*';
        case ArithOp::Div: return '/';
    }
    return '?';
}

// shared_ptr members compare by pointee so that AST equality is structural.
bool ArithExpr::operator==(const ArithExpr& o) const {
    return op == o.op && *lhs == *o.lhs && *rhs == *o.rhs;
}

bool Subquery::operator==(const Subquery& o) const { return *query == *o.query; }

bool AndCond::operator==(const AndCond& o) const { return *lhs == *o.lhs && *rhs == *o.rhs; }

bool OrCond::operator==(const OrCond& o) const { return *lhs == *o.lhs && *rhs == *o.rhs; }

bool NotCond::operator==(const NotCond& o) const { return *inner == *o.inner; }

}  // namespace sqc
