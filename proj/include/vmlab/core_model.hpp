#pragma once

#include "vmlab/exact_value.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vmlab {

enum class InstrumentKind { VernierCaliper, Micrometer, DialIndicator, VernierProtractor };

/// Lab menu order.
inline constexpr std::array<InstrumentKind, 4> kAllKinds{
    InstrumentKind::VernierCaliper,
    InstrumentKind::Micrometer,
    InstrumentKind::DialIndicator,
    InstrumentKind::VernierProtractor,
};

/// URL / CSV identifier: caliper, micrometer, dial, protractor.
std::string_view slug(InstrumentKind kind) noexcept;
std::optional<InstrumentKind> kind_from_slug(std::string_view text) noexcept;

/// Menu label: "Vernier caliper", "Micrometer", "Dial indicator", "Protractor".
std::string_view display_name(InstrumentKind kind) noexcept;

/**
 * Parametric description of one instrument.
 *
 * The least count is held in the dimension's base unit (mm or degree). One
 * tick is one least count; main_division_ticks ticks make one main-scale
 * division (1 mm on the caliper, 0.5 mm on the micrometer sleeve, 1 degree on
 * the protractor, one graduation on the dial face).
 */
struct InstrumentSpec {
    InstrumentKind kind = InstrumentKind::VernierCaliper;
    Dimension dimension = Dimension::Length;
    std::int64_t least_count_num = 1;
    std::int64_t least_count_den = 10;
    std::int64_t range_max_ticks = 1500;
    std::int64_t main_division_ticks = 10;
    std::optional<std::int64_t> vernier_divisions;
    std::optional<std::int64_t> divisions_per_revolution;
    Unit display_unit = Unit::Millimetre;
    int display_decimals = 1;

    Rational least_count() const { return Rational(least_count_num, least_count_den); }
    Rational main_division() const { return least_count() * Rational(main_division_ticks); }
    bool has_vernier() const noexcept { return vernier_divisions.has_value(); }

    friend bool operator==(const InstrumentSpec&, const InstrumentSpec&) = default;
};

/// Throws LabError(InvalidArgument) naming the first violated invariant.
void validate(const InstrumentSpec& spec);

/// Canonical parameters for each kind; every result passes validate().
InstrumentSpec default_spec(InstrumentKind kind);

/// Caliper or protractor with an N-division vernier (least count = main division / N).
InstrumentSpec vernier_spec(InstrumentKind kind, std::int64_t vernier_divisions);

/// Integer count of least counts. The only representation of instrument state.
struct TickPosition {
    std::int64_t ticks = 0;

    friend auto operator<=>(const TickPosition&, const TickPosition&) = default;
};

/// Throws LabError(OutOfRange) unless 0 <= pos.ticks <= spec.range_max_ticks.
void require_in_range(const InstrumentSpec& spec, TickPosition pos);

bool in_range(const InstrumentSpec& spec, TickPosition pos) noexcept;

/// The least count expressed in the display unit (10 μm for the dial).
Rational display_least_count(const InstrumentSpec& spec);

ExactValue ticks_to_value(const InstrumentSpec& spec, TickPosition pos);

/// Plain decimal in the display unit with exactly display_decimals fraction digits.
std::string format_value(const InstrumentSpec& spec, TickPosition pos);

/// Parses a typed reading. Accepts `\s*[0-9]+(\.[0-9]+)?\s*`; anything else
/// throws LabError(MalformedInput).
ExactValue parse_answer(const InstrumentSpec& spec, std::string_view text);

}  // namespace vmlab
