#pragma once

#include <string>
#include <vector>

#include "sqc/ast.hpp"

namespace sqc {

enum class DifficultyLevel { Easy, Medium, Hard, ExtraHard };

const char* difficulty_name(DifficultyLevel level);           // "easy", ...
DifficultyLevel difficulty_from_name(const std::string& name);  // throws SchemaError

// Element-count bands: <=6 Easy, <=14 Medium, <=20 Hard, else Extra Hard.
DifficultyLevel difficulty_for_element_count(std::size_t elements);
DifficultyLevel classify_difficulty(const SqlQuery& query);

enum class OperatorTag { Select, Filter, Aggregate, Superlative, Arithmetic, Comparative, Group };

inline constexpr OperatorTag kAllOperatorTags[] = {
    OperatorTag::Select,      OperatorTag::Filter,     OperatorTag::Aggregate,
    OperatorTag::Superlative, OperatorTag::Arithmetic, OperatorTag::Comparative,
    OperatorTag::Group};

const char* operator_tag_name(OperatorTag tag);               // "select", ...
OperatorTag operator_tag_from_name(const std::string& name);  // throws SchemaError

// Sorted, duplicate-free tag set. Select is always present; Filter for a
// WHERE clause; Aggregate for any aggregate; Superlative for ORDER BY with
// LIMIT 1 or a MIN/MAX projection; Arithmetic for arithmetic; Comparative
// for a non-equality comparison or IN inside conditions; Group for GROUP BY.
std::vector<OperatorTag> tag_operators(const SqlQuery& query);

}  // namespace sqc
