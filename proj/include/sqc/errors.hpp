#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sqc {

// Base for all domain errors. kind() is stable and machine-parsable; the
// CLI prints "error: <kind>: <message>" and exits 1.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SQC_ERROR(NAME, KIND)                                         \
    class NAME : public Error {                                       \
    public:                                                           \
        explicit NAME(const std::string& msg) : Error(KIND, msg) {}   \
    }

SQC_ERROR(IoError, "IoError");
SQC_ERROR(FormatError, "FormatError");
SQC_ERROR(LexError, "LexError");
SQC_ERROR(ParseError, "ParseError");
SQC_ERROR(BindError, "BindError");
SQC_ERROR(CardinalityError, "CardinalityError");
SQC_ERROR(TypeError, "TypeError");
SQC_ERROR(DivByZeroError, "DivByZero");
SQC_ERROR(EmptyTableError, "EmptyTableError");
SQC_ERROR(EmptySentenceError, "EmptySentenceError");
SQC_ERROR(BudgetError, "BudgetError");
SQC_ERROR(TemplateError, "TemplateError");
SQC_ERROR(IncompatibleError, "IncompatibleError");
SQC_ERROR(ExhaustionError, "ExhaustionError");
SQC_ERROR(NoCompatiblePairError, "NoCompatiblePairError");
SQC_ERROR(SchemaError, "SchemaError");
SQC_ERROR(LengthMismatchError, "LengthMismatchError");
SQC_ERROR(DegenerateError, "DegenerateError");

#undef SQC_ERROR

}  // namespace sqc
