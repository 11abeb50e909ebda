#include "sqc/analysis.hpp"

#include <algorithm>
#include <set>

#include "sqc/errors.hpp"
#include "sqc/printer.hpp"

namespace sqc {

const char* difficulty_name(DifficultyLevel level) {
    switch (level) {
        case DifficultyLevel::Easy: return "easy";
        case DifficultyLevel::Medium: return "medium";
        case DifficultyLevel::Hard: return "hard";
        case DifficultyLevel::ExtraHard: return "extra_hard";
    }
    return "";
}

DifficultyLevel difficulty_from_name(const std::string& name) {
    if (name == "easy") return DifficultyLevel::Easy;
    if (name == "medium") return DifficultyLevel::Medium;
    if (name == "hard") return DifficultyLevel::Hard;
    if (name == "extra_hard") return DifficultyLevel::ExtraHard;
    throw SchemaError("unknown difficulty level '" + name + "'");
}

DifficultyLevel difficulty_for_element_count(std::size_t elements) {
    if (elements <= 6) return DifficultyLevel::Easy;
    if (elements <= 14) return DifficultyLevel::Medium;
    if (elements <= 20) return DifficultyLevel::Hard;
    return DifficultyLevel::ExtraHard;
}

DifficultyLevel classify_difficulty(const SqlQuery& query) {
    return difficulty_for_element_count(element_stream(query).size());
}

const char* operator_tag_name(OperatorTag tag) {
    switch (tag) {
        case OperatorTag::Select: return "select";
        case OperatorTag::Filter: return "filter";
        case OperatorTag::Aggregate: return "aggregate";
        case OperatorTag::Superlative: return "superlative";
        case OperatorTag::Arithmetic: return "arithmetic";
        case OperatorTag::Comparative: return "comparative";
        case OperatorTag::Group: return "group";
    }
    return "";
}

OperatorTag operator_tag_from_name(const std::string& name) {
    for (OperatorTag tag : kAllOperatorTags)
        if (name == operator_tag_name(tag)) return tag;
    throw SchemaError("unknown operator tag '" + name + "'");
}

namespace {

// Walks every query node, including subqueries, so that e.g. an argmax
// written as "WHERE x = (SELECT MAX(x))" still tags Superlative.
class Tagger {
public:
    std::set<OperatorTag> tags;

    void walk_query(const SqlQuery& q, bool /*top*/) {
        if (q.where) {
            tags.insert(OperatorTag::Filter);
            walk_condition(*q.where);
        }
        if (q.group_by) tags.insert(OperatorTag::Group);
        if (q.order_by && q.order_by->key.count_star) tags.insert(OperatorTag::Aggregate);
        if (q.order_by && q.limit && *q.limit == 1) tags.insert(OperatorTag::Superlative);
        for (const auto& item : q.projection) {
            if (const auto* sc = std::get_if<ScalarExpr>(&item.node)) {
                walk_scalar(*sc, /*in_projection=*/true);
            } else if (const auto* bc = std::get_if<BoolCompare>(&item.node)) {
                walk_scalar(bc->lhs, true);
                walk_scalar(bc->rhs, true);
            }
        }
    }

private:
    void walk_scalar(const ScalarExpr& e, bool in_projection) {
        if (const auto* agg = std::get_if<Aggregate>(&e.node)) {
            tags.insert(OperatorTag::Aggregate);
            if (in_projection && (agg->fn == AggFn::Min || agg->fn == AggFn::Max))
                tags.insert(OperatorTag::Superlative);
        } else if (const auto* a = std::get_if<ArithExpr>(&e.node)) {
            tags.insert(OperatorTag::Arithmetic);
            walk_scalar(*a->lhs, in_projection);
            walk_scalar(*a->rhs, in_projection);
        } else if (const auto* sub = std::get_if<Subquery>(&e.node)) {
            walk_query(*sub->query, false);
        }
    }

    void walk_condition(const Condition& c) {
        if (const auto* cmp = std::get_if<Compare>(&c.node)) {
            if (cmp->op != CmpOp::Eq) tags.insert(OperatorTag::Comparative);
            if (const auto* sub = std::get_if<Subquery>(&cmp->rhs)) walk_query(*sub->query, false);
        } else if (const auto* in = std::get_if<InList>(&c.node)) {
            (void)in;
            tags.insert(OperatorTag::Comparative);
        } else if (const auto* a = std::get_if<AndCond>(&c.node)) {
            walk_condition(*a->lhs);
            walk_condition(*a->rhs);
        } else if (const auto* o = std::get_if<OrCond>(&c.node)) {
            walk_condition(*o->lhs);
            walk_condition(*o->rhs);
        } else {
            walk_condition(*std::get<NotCond>(c.node).inner);
        }
    }
};

}  // namespace

std::vector<OperatorTag> tag_operators(const SqlQuery& query) {
    Tagger tagger;
    tagger.tags.insert(OperatorTag::Select);
    tagger.walk_query(query, true);
    return std::vector<OperatorTag>(tagger.tags.begin(), tagger.tags.end());
}

}  // namespace sqc
