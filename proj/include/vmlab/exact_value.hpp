#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace vmlab {

/// Exact rational with a positive denominator, always in lowest terms.
///
/// Arithmetic is carried out in 128-bit intermediates and reduced; a result
/// that does not fit back into 64 bits throws std::overflow_error.
class Rational {
  public:
    constexpr Rational() noexcept = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

    /// Largest integer not greater than the value.
    std::int64_t floor() const noexcept;

    /// Shortest exact decimal ("0.1", "12.34", "3"); requires a terminating expansion.
    std::string to_decimal() const;

    /// Decimal with exactly `decimals` fraction digits; throws if not exact.
    std::string to_fixed(int decimals) const;

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

enum class Dimension { Length, Angle };

enum class Unit { Millimetre, Micrometre, Degree };

Dimension dimension_of(Unit unit) noexcept;

/// Printed unit symbol: "mm", "μm" or "°".
std::string_view unit_symbol(Unit unit) noexcept;

/// A measured or entered value in a display unit.
struct ExactValue {
    Rational amount;
    Unit unit = Unit::Millimetre;

    /// The amount in the dimension's base unit (mm or degree).
    Rational in_base_unit() const;
};

/// Exact ordering between two values of the same dimension.
/// Throws LabError(InvalidArgument) when the dimensions differ.
std::strong_ordering compare(const ExactValue& a, const ExactValue& b);

bool same_quantity(const ExactValue& a, const ExactValue& b);

}  // namespace vmlab
