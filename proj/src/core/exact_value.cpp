#include "vmlab/exact_value.hpp"

#include "vmlab/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vmlab {

namespace {

using wide = __int128;

wide gcd_wide(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational reduce(wide num, wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr wide hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        if (num == std::numeric_limits<std::int64_t>::min() ||
            den == std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("rational overflow");
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Rational operator+(const Rational& a, const Rational& b) {
    return reduce(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return reduce(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return reduce(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return reduce(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
}

std::int64_t Rational::floor() const noexcept {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::string Rational::to_fixed(int decimals) const {
    if (decimals < 0) throw std::invalid_argument("negative decimal count");
    wide scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const wide scaled = wide(num_) * scale;
    if (scaled % den_ != 0)
        throw std::invalid_argument("value " + std::to_string(num_) + "/" + std::to_string(den_) +
                                    " has no exact " + std::to_string(decimals) +
                                    "-digit decimal form");
    wide units = scaled / den_;
    const bool negative = units < 0;
    if (negative) units = -units;

    std::string digits;
    do {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(units % 10)));
        units /= 10;
    } while (units != 0);
    while (static_cast<int>(digits.size()) <= decimals) digits.insert(digits.begin(), '0');

    std::string out = negative ? "-" : "";
    out += digits.substr(0, digits.size() - decimals);
    if (decimals > 0) {
        out += '.';
        out += digits.substr(digits.size() - decimals);
    }
    return out;
}

std::string Rational::to_decimal() const {
    // A terminating expansion exists iff den has no prime factors besides 2 and 5.
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d != 1)
        throw std::invalid_argument("rational " + std::to_string(num_) + "/" + std::to_string(den_) +
                                    " has no terminating decimal form");
    return to_fixed(std::max(twos, fives));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num();
    if (r.den() != 1) os << '/' << r.den();
    return os;
}

Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

Dimension dimension_of(Unit unit) noexcept {
    return unit == Unit::Degree ? Dimension::Angle : Dimension::Length;
}

std::string_view unit_symbol(Unit unit) noexcept {
    switch (unit) {
        case Unit::Millimetre: return "mm";
        case Unit::Micrometre: return "μm";
        case Unit::Degree: return "°";
    }
    return "";
}

Rational ExactValue::in_base_unit() const {
    return unit == Unit::Micrometre ? amount / Rational(1000) : amount;
}

std::strong_ordering compare(const ExactValue& a, const ExactValue& b) {
    if (dimension_of(a.unit) != dimension_of(b.unit))
        throw LabError(ErrorCode::InvalidArgument, "cannot compare a length with an angle");
    return a.in_base_unit() <=> b.in_base_unit();
}

bool same_quantity(const ExactValue& a, const ExactValue& b) {
    return compare(a, b) == std::strong_ordering::equal;
}

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInput: return "malformed_input";
        case ErrorCode::NotFound: return "not_found";
        case ErrorCode::AlreadyAnswered: return "already_answered";
        case ErrorCode::OutOfRange: return "out_of_range";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::Internal: return "internal";
    }
    return "internal";
}

}  // namespace vmlab
