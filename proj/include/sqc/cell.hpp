#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sqc {

// Exact decimal number: value = units / 10^scale, scale in [0, 18].
// Covers integer and fixed-point cell values; integers stay exact far
// beyond 2^53. Addition, subtraction, multiplication and comparison are
// exact; division (and averaging) is performed in double precision by
// the executor and converted back via from_double.
class Decimal {
public:
    Decimal() = default;

    static Decimal from_int(std::int64_t v);
    // Strict grammar: [+-] digits [. digits]. No commas, no exponent.
    static std::optional<Decimal> parse(std::string_view text);
    // Same, but trims surrounding whitespace and strips well-formed
    // thousands separators first ("2,000" -> 2000; "12,34" is rejected).
    static std::optional<Decimal> parse_lenient(std::string_view text);
    // Shortest round-trip decimal digits of v. Throws TypeError if v is
    // not finite or needs more than 18 digits of scale/magnitude.
    static Decimal from_double(double v);

    std::string str() const;
    double to_double() const;
    bool is_integer() const { return scale_ == 0; }
    bool is_zero() const { return units_ == 0; }

    int compare(const Decimal& o) const;
    bool operator==(const Decimal& o) const { return compare(o) == 0; }
    bool operator<(const Decimal& o) const { return compare(o) < 0; }

    Decimal add(const Decimal& o) const;
    Decimal sub(const Decimal& o) const;
    Decimal mul(const Decimal& o) const;

private:
    Decimal(std::int64_t units, int scale) : units_(units), scale_(scale) { normalize(); }
    void normalize();

    std::int64_t units_ = 0;
    int scale_ = 0;
};

enum class CellKind { Empty, Number, Text };

// A single table cell. Text keeps the original characters from the
// source file; all case folding happens at comparison sites.
struct CellValue {
    CellKind kind = CellKind::Empty;
    Decimal num;       // valid iff kind == Number
    std::string text;  // valid iff kind == Text

    static CellValue empty() { return CellValue{}; }
    static CellValue number(Decimal d) { return CellValue{CellKind::Number, d, {}}; }
    static CellValue of_text(std::string s) { return CellValue{CellKind::Text, {}, std::move(s)}; }

    bool is_empty() const { return kind == CellKind::Empty; }
    // Number -> shortest decimal digits, Text -> verbatim, Empty -> "".
    std::string display() const;

    bool operator==(const CellValue& o) const;
};

// Total order used for ORDER BY: Empty sorts before everything, numbers
// by value, text case-insensitively on the trimmed string. Text values
// that differ only by case compare equal; the executor breaks such ties
// by original row index.
int compare_cells(const CellValue& a, const CellValue& b);

enum class ColumnType { Number, Text };

// ASCII helpers shared by the executor, linearizer and evaluator.
std::string fold_case(std::string_view s);
std::string trim(std::string_view s);
std::string collapse_ws(std::string_view s);

}  // namespace sqc
