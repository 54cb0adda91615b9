#include "vmlab/core_model.hpp"

#include "vmlab/error.hpp"

#include <algorithm>
#include <cctype>

namespace vmlab {

namespace {

// Longest digit runs accepted on either side of the point once redundant
// zeros are dropped. Keeps every parsed value inside 64-bit rationals.
constexpr std::size_t kMaxIntegerDigits = 9;
constexpr std::size_t kMaxFractionDigits = 9;

void fail(const std::string& what) { throw LabError(ErrorCode::InvalidArgument, what); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int decimals_for(const Rational& r) {
    const std::string text = r.to_decimal();
    const auto dot = text.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

}  // namespace

std::string_view slug(InstrumentKind kind) noexcept {
    switch (kind) {
        case InstrumentKind::VernierCaliper: return "caliper";
        case InstrumentKind::Micrometer: return "micrometer";
        case InstrumentKind::DialIndicator: return "dial";
        case InstrumentKind::VernierProtractor: return "protractor";
    }
    return "";
}

std::optional<InstrumentKind> kind_from_slug(std::string_view text) noexcept {
    for (auto kind : kAllKinds)
        if (slug(kind) == text) return kind;
    return std::nullopt;
}

std::string_view display_name(InstrumentKind kind) noexcept {
    switch (kind) {
        case InstrumentKind::VernierCaliper: return "Vernier caliper";
        case InstrumentKind::Micrometer: return "Micrometer";
        case InstrumentKind::DialIndicator: return "Dial indicator";
        case InstrumentKind::VernierProtractor: return "Protractor";
    }
    return "";
}

void validate(const InstrumentSpec& spec) {
    if (spec.least_count_num <= 0 || spec.least_count_den <= 0)
        fail("least count must be a positive rational");
    if (spec.range_max_ticks <= 0) fail("range_max_ticks must be positive");
    if (spec.main_division_ticks <= 0) fail("main_division_ticks must be positive");
    if (spec.range_max_ticks % spec.main_division_ticks != 0)
        fail("range_max_ticks must be a multiple of main_division_ticks");
    if (spec.display_decimals < 0) fail("display_decimals must be non-negative");

    const bool vernier_kind = spec.kind == InstrumentKind::VernierCaliper ||
                              spec.kind == InstrumentKind::VernierProtractor;
    if (vernier_kind != spec.vernier_divisions.has_value())
        fail("vernier_divisions must be present exactly for calipers and protractors");
    if (spec.vernier_divisions && *spec.vernier_divisions != spec.main_division_ticks)
        fail("vernier_divisions must equal main_division_ticks");

    const bool dial = spec.kind == InstrumentKind::DialIndicator;
    if (dial != spec.divisions_per_revolution.has_value())
        fail("divisions_per_revolution must be present exactly for dial indicators");
    if (spec.divisions_per_revolution) {
        if (*spec.divisions_per_revolution <= 0) fail("divisions_per_revolution must be positive");
        if (spec.range_max_ticks % *spec.divisions_per_revolution != 0)
            fail("dial range must be a whole number of revolutions");
    }

    const Dimension expected = spec.kind == InstrumentKind::VernierProtractor ? Dimension::Angle
                                                                             : Dimension::Length;
    if (spec.dimension != expected) fail("dimension does not match instrument kind");
    if (dimension_of(spec.display_unit) != spec.dimension)
        fail("display unit does not match dimension");

    // Every tick must print exactly with the configured decimals.
    const Rational step = display_least_count(spec);
    try {
        (void)step.to_fixed(spec.display_decimals);
    } catch (const std::invalid_argument&) {
        fail("one least count is not exactly printable with " +
             std::to_string(spec.display_decimals) + " decimals");
    }
}

InstrumentSpec default_spec(InstrumentKind kind) {
    InstrumentSpec spec;
    spec.kind = kind;
    switch (kind) {
        case InstrumentKind::VernierCaliper:
            return vernier_spec(kind, 10);
        case InstrumentKind::Micrometer:
            spec.dimension = Dimension::Length;
            spec.least_count_num = 1;
            spec.least_count_den = 100;
            spec.range_max_ticks = 2500;
            spec.main_division_ticks = 50;
            spec.display_unit = Unit::Millimetre;
            spec.display_decimals = 2;
            break;
        case InstrumentKind::DialIndicator:
            spec.dimension = Dimension::Length;
            spec.least_count_num = 1;
            spec.least_count_den = 100;
            spec.range_max_ticks = 1000;
            spec.main_division_ticks = 1;
            spec.divisions_per_revolution = 100;
            spec.display_unit = Unit::Micrometre;
            spec.display_decimals = 0;
            break;
        case InstrumentKind::VernierProtractor:
            return vernier_spec(kind, 10);
    }
    validate(spec);
    return spec;
}

InstrumentSpec vernier_spec(InstrumentKind kind, std::int64_t vernier_divisions) {
    if (kind != InstrumentKind::VernierCaliper && kind != InstrumentKind::VernierProtractor)
        fail("only calipers and protractors carry a vernier");
    if (vernier_divisions < 2) fail("a vernier needs at least two divisions");

    const bool caliper = kind == InstrumentKind::VernierCaliper;
    const std::int64_t main_divisions = caliper ? 150 : 180;  // 150 mm beam, 180 degree arc

    InstrumentSpec spec;
    spec.kind = kind;
    spec.dimension = caliper ? Dimension::Length : Dimension::Angle;
    spec.least_count_num = 1;
    spec.least_count_den = vernier_divisions;
    spec.main_division_ticks = vernier_divisions;
    spec.vernier_divisions = vernier_divisions;
    spec.range_max_ticks = main_divisions * vernier_divisions;
    spec.display_unit = caliper ? Unit::Millimetre : Unit::Degree;
    try {
        spec.display_decimals = decimals_for(spec.least_count());
    } catch (const std::invalid_argument&) {
        fail("vernier least count 1/" + std::to_string(vernier_divisions) +
             " has no exact decimal form");
    }
    validate(spec);
    return spec;
}

bool in_range(const InstrumentSpec& spec, TickPosition pos) noexcept {
    return pos.ticks >= 0 && pos.ticks <= spec.range_max_ticks;
}

void require_in_range(const InstrumentSpec& spec, TickPosition pos) {
    if (!in_range(spec, pos))
        throw LabError(ErrorCode::OutOfRange,
                       "position " + std::to_string(pos.ticks) + " outside [0, " +
                           std::to_string(spec.range_max_ticks) + "] for " +
                           std::string(slug(spec.kind)));
}

Rational display_least_count(const InstrumentSpec& spec) {
    const Rational lc = spec.least_count();
    return spec.display_unit == Unit::Micrometre ? lc * Rational(1000) : lc;
}

ExactValue ticks_to_value(const InstrumentSpec& spec, TickPosition pos) {
    require_in_range(spec, pos);
    return ExactValue{display_least_count(spec) * Rational(pos.ticks), spec.display_unit};
}

std::string format_value(const InstrumentSpec& spec, TickPosition pos) {
    return ticks_to_value(spec, pos).amount.to_fixed(spec.display_decimals);
}

ExactValue parse_answer(const InstrumentSpec& spec, std::string_view text) {
    auto malformed = [&](const char* why) -> LabError {
        return LabError(ErrorCode::MalformedInput,
                        "cannot read \"" + std::string(text) + "\" as a reading: " + why);
    };

    std::size_t begin = 0, end = text.size();
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    const std::string_view body = text.substr(begin, end - begin);
    if (body.empty()) throw malformed("empty answer");

    const auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view fraction =
        dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);

    if (whole.empty()) throw malformed("expected digits before the decimal point");
    if (dot != std::string_view::npos && fraction.empty())
        throw malformed("expected digits after the decimal point");
    if (!std::all_of(whole.begin(), whole.end(), is_digit) ||
        !std::all_of(fraction.begin(), fraction.end(), is_digit))
        throw malformed("use digits and a single decimal point only");

    while (whole.size() > 1 && whole.front() == '0') whole.remove_prefix(1);
    while (!fraction.empty() && fraction.back() == '0') fraction.remove_suffix(1);
    if (whole.size() > kMaxIntegerDigits || fraction.size() > kMaxFractionDigits)
        throw malformed("too many digits");

    std::int64_t num = 0, den = 1;
    for (char c : whole) num = num * 10 + (c - '0');
    for (char c : fraction) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return ExactValue{Rational(num, den), spec.display_unit};
}

}  // namespace vmlab
