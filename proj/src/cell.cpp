#include "sqc/cell.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "sqc/errors.hpp"

namespace sqc {

namespace {

constexpr int kMaxScale = 18;

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::int64_t pow10_i64(int n) {
    std::int64_t p = 1;
    while (n-- > 0) p *= 10;
    return p;
}

// Validates digit grouping when commas are present: 1-3 leading digits,
// then groups of exactly 3. Returns the comma-free integer part, or
// nullopt if the grouping is malformed ("12,34", ",5", "1,,2").
std::optional<std::string> strip_thousands(std::string_view intpart) {
    if (intpart.find(',') == std::string_view::npos) return std::string(intpart);
    std::string out;
    std::size_t group = 0, groups_seen = 0;
    for (std::size_t i = 0; i <= intpart.size(); ++i) {
        if (i == intpart.size() || intpart[i] == ',') {
            if (groups_seen == 0) {
                if (group < 1 || group > 3) return std::nullopt;
            } else if (group != 3) {
                return std::nullopt;
            }
            ++groups_seen;
            group = 0;
        } else if (intpart[i] >= '0' && intpart[i] <= '9') {
            ++group;
            out.push_back(intpart[i]);
        } else {
            return std::nullopt;
        }
    }
    return out;
}

}  // namespace

Decimal Decimal::from_int(std::int64_t v) { return Decimal(v, 0); }

void Decimal::normalize() {
    while (scale_ > 0 && units_ % 10 == 0) {
        units_ /= 10;
        --scale_;
    }
    if (units_ == 0) scale_ = 0;
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    unsigned __int128 units = 0;
    int scale = 0;
    bool any_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            units = units * 10 + static_cast<unsigned>(c - '0');
            if (units > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
                return std::nullopt;
            if (seen_dot) {
                if (++scale > kMaxScale) return std::nullopt;
            }
            any_digit = true;
        } else {
            return std::nullopt;
        }
    }
    if (!any_digit) return std::nullopt;
    auto u = static_cast<std::int64_t>(units);
    return Decimal(neg ? -u : u, scale);
}

std::optional<Decimal> Decimal::parse_lenient(std::string_view text) {
    std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    std::string_view body = t;
    std::string sign;
    if (body.front() == '+' || body.front() == '-') {
        sign = body.front();
        body.remove_prefix(1);
    }
    std::string_view intpart = body, fracpart;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        intpart = body.substr(0, dot);
        fracpart = body.substr(dot);  // keeps the '.'
    }
    if (fracpart.find(',') != std::string_view::npos) return std::nullopt;
    auto stripped = strip_thousands(intpart);
    if (!stripped) return std::nullopt;
    return parse(sign + *stripped + std::string(fracpart));
}

Decimal Decimal::from_double(double v) {
    if (!std::isfinite(v)) throw TypeError("non-finite arithmetic result");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string_view s(buf, static_cast<std::size_t>(res.ptr - buf));
    // to_chars emits scientific notation for extreme magnitudes; expand it.
    auto epos = s.find('e');
    if (epos == std::string_view::npos) {
        auto d = parse(s);
        if (!d) throw TypeError("arithmetic result out of decimal range: " + std::string(s));
        return *d;
    }
    std::string digits(s.substr(0, epos));
    int exp = std::atoi(std::string(s.substr(epos + 1)).c_str());
    std::string mantissa_sign;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        if (digits[0] == '-') mantissa_sign = "-";
        digits.erase(0, 1);
    }
    std::string intd = digits, fracd;
    if (auto dot = digits.find('.'); dot != std::string::npos) {
        intd = digits.substr(0, dot);
        fracd = digits.substr(dot + 1);
    }
    std::string all = intd + fracd;
    int point = static_cast<int>(intd.size()) + exp;  // digits before the decimal point
    std::string expanded;
    if (point <= 0) {
        expanded = "0." + std::string(static_cast<std::size_t>(-point), '0') + all;
    } else if (point >= static_cast<int>(all.size())) {
        expanded = all + std::string(static_cast<std::size_t>(point) - all.size(), '0');
    } else {
        expanded = all.substr(0, static_cast<std::size_t>(point)) + "." +
                   all.substr(static_cast<std::size_t>(point));
    }
    auto d = parse(mantissa_sign + expanded);
    if (!d) throw TypeError("arithmetic result out of decimal range: " + std::string(s));
    return *d;
}

std::string Decimal::str() const {
    if (scale_ == 0) return std::to_string(units_);
    bool neg = units_ < 0;
    // units_ == INT64_MIN cannot occur with scale_ > 0: normalize() strips
    // trailing zeros and INT64_MIN ends in 8, so the magnitude fits.
    std::string digits = std::to_string(neg ? -units_ : units_);
    if (static_cast<int>(digits.size()) <= scale_)
        digits.insert(0, static_cast<std::size_t>(scale_) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
    return neg ? "-" + digits : digits;
}

double Decimal::to_double() const {
    return static_cast<double>(units_) / static_cast<double>(pow10_i64(scale_));
}

int Decimal::compare(const Decimal& o) const {
    int s = std::max(scale_, o.scale_);
    __int128 a = static_cast<__int128>(units_) * pow10_i64(s - scale_);
    __int128 b = static_cast<__int128>(o.units_) * pow10_i64(s - o.scale_);
    return a < b ? -1 : (a > b ? 1 : 0);
}

namespace {

// Reduces an intermediate (units, scale) pair back into int64 range,
// dropping only trailing zero digits. Anything that still does not fit is
// a genuine overflow of the exact representation.
Decimal make_checked(__int128 units, int scale, const char* op) {
    auto fits = [](__int128 u) {
        return u <= std::numeric_limits<std::int64_t>::max() &&
               u >= std::numeric_limits<std::int64_t>::min();
    };
    while ((scale > kMaxScale || !fits(units)) && scale > 0 && units % 10 == 0) {
        units /= 10;
        --scale;
    }
    if (scale > kMaxScale || !fits(units))
        throw TypeError(std::string("numeric overflow in ") + op);
    std::string digits = std::to_string(static_cast<unsigned long long>(units < 0 ? -units : units));
    if (static_cast<int>(digits.size()) <= scale)
        digits.insert(0, static_cast<std::size_t>(scale) + 1 - digits.size(), '0');
    if (scale > 0) digits.insert(digits.size() - static_cast<std::size_t>(scale), ".");
    if (units < 0) digits.insert(0, "-");
    auto parsed = Decimal::parse(digits);
    if (!parsed) throw TypeError(std::string("numeric overflow in ") + op);
    return *parsed;
}

}  // namespace

Decimal Decimal::add(const Decimal& o) const {
    int s = std::max(scale_, o.scale_);
    __int128 a = static_cast<__int128>(units_) * pow10_i64(s - scale_);
    __int128 b = static_cast<__int128>(o.units_) * pow10_i64(s - o.scale_);
    return make_checked(a + b, s, "add");
}

Decimal Decimal::sub(const Decimal& o) const {
    int s = std::max(scale_, o.scale_);
    __int128 a = static_cast<__int128>(units_) * pow10_i64(s - scale_);
    __int128 b = static_cast<__int128>(o.units_) * pow10_i64(s - o.scale_);
    return make_checked(a - b, s, "sub");
}

Decimal Decimal::mul(const Decimal& o) const {
    __int128 p = static_cast<__int128>(units_) * static_cast<__int128>(o.units_);
    return make_checked(p, scale_ + o.scale_, "mul");
}

std::string CellValue::display() const {
    switch (kind) {
        case CellKind::Empty: return "";
        case CellKind::Number: return num.str();
        case CellKind::Text: return text;
    }
    return "";
}

bool CellValue::operator==(const CellValue& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case CellKind::Empty: return true;
        case CellKind::Number: return num == o.num;
        case CellKind::Text: return text == o.text;
    }
    return false;
}

int compare_cells(const CellValue& a, const CellValue& b) {
    auto rank = [](const CellValue& c) {
        switch (c.kind) {
            case CellKind::Empty: return 0;
            case CellKind::Number: return 1;
            case CellKind::Text: return 2;
        }
        return 0;
    };
    if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
    switch (a.kind) {
        case CellKind::Empty: return 0;
        case CellKind::Number: return a.num.compare(b.num);
        case CellKind::Text: {
            std::string fa = fold_case(trim(a.text)), fb = fold_case(trim(b.text));
            return fa < fb ? -1 : (fa > fb ? 1 : 0);
        }
    }
    return 0;
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ws(s[b])) ++b;
    while (e > b && is_ws(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    bool prev_ws = false;
    for (char c : s) {
        if (is_ws(c)) {
            prev_ws = true;
            continue;
        }
        if (prev_ws && !out.empty()) out.push_back(' ');
        prev_ws = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace sqc
