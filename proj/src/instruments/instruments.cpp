#include "vmlab/instruments.hpp"

#include "vmlab/error.hpp"

#include <algorithm>

namespace vmlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_vernier(const InstrumentSpec& spec) {
    if (!spec.has_vernier())
        throw LabError(ErrorCode::InvalidArgument,
                       std::string(slug(spec.kind)) + " has no vernier scale");
}

void require_kind(const InstrumentSpec& spec, InstrumentKind kind) {
    if (spec.kind != kind)
        throw LabError(ErrorCode::InvalidArgument,
                       "reading for " + std::string(slug(kind)) + " given to " +
                           std::string(slug(spec.kind)));
}

void require_component(std::int64_t value, std::int64_t bound, const char* name) {
    if (value < 0 || value >= bound)
        throw LabError(ErrorCode::OutOfRange, std::string(name) + " " + std::to_string(value) +
                                                  " outside [0, " + std::to_string(bound) + ")");
}

std::int64_t revolution_divisions(const InstrumentSpec& spec) {
    if (!spec.divisions_per_revolution)
        throw LabError(ErrorCode::InvalidArgument,
                       std::string(slug(spec.kind)) + " has no rotating dial");
    return *spec.divisions_per_revolution;
}

Mark mark(ScaleRole role, Rational at, MarkTier tier, std::optional<std::string> label = {}) {
    return Mark{role, at, tier, std::move(label)};
}

// Main scale plus the vernier plate: N + 1 marks spanning N - 1 main divisions.
void vernier_marks(const InstrumentSpec& spec, ScaleGeometry& geo) {
    const std::int64_t n = *spec.vernier_divisions;
    const Rational division = spec.main_division();
    const std::int64_t range_divisions = spec.range_max_ticks / spec.main_division_ticks;

    // The beam extends one vernier length past the range so every vernier
    // mark has a fixed neighbour at full extension.
    const std::int64_t fixed_count = range_divisions + n - 1;
    for (std::int64_t i = 0; i <= fixed_count; ++i) {
        const bool labelled = i % 10 == 0 && i <= range_divisions;
        geo.fixed_marks.push_back(mark(ScaleRole::Fixed, division * Rational(i),
                                       i % 10 == 0 ? MarkTier::Major : MarkTier::Minor,
                                       labelled ? std::optional(std::to_string(i)) : std::nullopt));
    }

    const Rational pitch = division * Rational(n - 1, n);
    for (std::int64_t j = 0; j <= n; ++j) {
        const bool labelled = (j * 10) % n == 0;
        geo.moving_marks.push_back(
            mark(ScaleRole::Moving, pitch * Rational(j),
                 (j * 2) % n == 0 ? MarkTier::Major : MarkTier::Minor,
                 labelled ? std::optional(std::to_string(j * 10 / n)) : std::nullopt));
    }
}

void micrometer_marks(const InstrumentSpec& spec, ScaleGeometry& geo) {
    const Rational division = spec.main_division();  // 0.5 mm sleeve graduation
    const std::int64_t sleeve_count = spec.range_max_ticks / spec.main_division_ticks;
    for (std::int64_t i = 0; i <= sleeve_count; ++i) {
        const Rational at = division * Rational(i);
        const bool whole_mm = at.is_integer();
        const bool labelled = whole_mm && at.num() % 5 == 0;
        geo.fixed_marks.push_back(mark(ScaleRole::Fixed, at,
                                       whole_mm ? MarkTier::Major : MarkTier::Minor,
                                       labelled ? std::optional(std::to_string(at.num())) : std::nullopt));
    }

    // Thimble graduations, local coordinate = axial advance they stand for.
    const Rational lc = spec.least_count();
    for (std::int64_t j = 0; j < spec.main_division_ticks; ++j) {
        const bool labelled = j % 5 == 0;
        geo.moving_marks.push_back(
            mark(ScaleRole::Moving, lc * Rational(j), labelled ? MarkTier::Major : MarkTier::Minor,
                 labelled ? std::optional(std::to_string(j)) : std::nullopt));
    }
}

void dial_marks(const InstrumentSpec& spec, ScaleGeometry& geo) {
    const std::int64_t divisions = *spec.divisions_per_revolution;
    const Rational step(360, divisions);
    for (std::int64_t i = 0; i < divisions; ++i) {
        const bool labelled = i % 10 == 0;
        geo.fixed_marks.push_back(mark(ScaleRole::Fixed, step * Rational(i),
                                       labelled ? MarkTier::Major : MarkTier::Minor,
                                       labelled ? std::optional(std::to_string(i)) : std::nullopt));
    }
    geo.pointers.push_back(mark(ScaleRole::Pointer, Rational(0), MarkTier::Major, "main"));
    geo.pointers.push_back(mark(ScaleRole::Pointer, Rational(0), MarkTier::Minor, "revolutions"));
}

}  // namespace

InstrumentKind kind_of(const Reading& reading) noexcept {
    return std::visit(overloaded{
                          [](const CaliperReading&) { return InstrumentKind::VernierCaliper; },
                          [](const MicrometerReading&) { return InstrumentKind::Micrometer; },
                          [](const DialReading&) { return InstrumentKind::DialIndicator; },
                          [](const ProtractorReading&) { return InstrumentKind::VernierProtractor; },
                      },
                      reading);
}

Reading decompose(const InstrumentSpec& spec, TickPosition pos) {
    require_in_range(spec, pos);
    const std::int64_t t = pos.ticks;
    switch (spec.kind) {
        case InstrumentKind::VernierCaliper: {
            const std::int64_t n = *spec.vernier_divisions;
            return CaliperReading{t / n, t % n};
        }
        case InstrumentKind::Micrometer: {
            const std::int64_t m = spec.main_division_ticks;
            return MicrometerReading{t / m, t % m};
        }
        case InstrumentKind::DialIndicator: {
            const std::int64_t d = revolution_divisions(spec);
            return DialReading{t / d, t % d};
        }
        case InstrumentKind::VernierProtractor: {
            const std::int64_t n = *spec.vernier_divisions;
            return ProtractorReading{t / n, t % n};
        }
    }
    throw LabError(ErrorCode::Internal, "unknown instrument kind");
}

TickPosition compose(const InstrumentSpec& spec, const Reading& reading) {
    require_kind(spec, kind_of(reading));
    auto combine = [&](std::int64_t major, std::int64_t per_major, std::int64_t minor,
                       const char* major_name, const char* minor_name) {
        require_component(minor, per_major, minor_name);
        if (major < 0 || major > spec.range_max_ticks / per_major)
            throw LabError(ErrorCode::OutOfRange,
                           std::string(major_name) + " " + std::to_string(major) + " beyond range");
        const TickPosition pos{major * per_major + minor};
        require_in_range(spec, pos);
        return pos;
    };
    return std::visit(
        overloaded{
            [&](const CaliperReading& r) {
                return combine(r.main_mm, *spec.vernier_divisions, r.vernier_index, "main",
                               "vernier index");
            },
            [&](const MicrometerReading& r) {
                return combine(r.sleeve_divisions, spec.main_division_ticks, r.thimble_index,
                               "sleeve divisions", "thimble index");
            },
            [&](const DialReading& r) {
                return combine(r.revolutions, revolution_divisions(spec), r.dial_index,
                               "revolutions", "dial index");
            },
            [&](const ProtractorReading& r) {
                return combine(r.degrees, *spec.vernier_divisions, r.vernier_index, "degrees",
                               "vernier index");
            },
        },
        reading);
}

std::int64_t coincidence_index(const InstrumentSpec& spec, TickPosition pos) {
    require_vernier(spec);
    require_in_range(spec, pos);
    return pos.ticks % *spec.vernier_divisions;
}

ScaleGeometry geometry_template(const InstrumentSpec& spec) {
    ScaleGeometry geo;
    geo.spec = spec;
    switch (spec.kind) {
        case InstrumentKind::VernierCaliper:
            geo.layout = ScaleLayout::Linear;
            vernier_marks(spec, geo);
            break;
        case InstrumentKind::VernierProtractor:
            geo.layout = ScaleLayout::Circular;
            vernier_marks(spec, geo);
            break;
        case InstrumentKind::Micrometer:
            geo.layout = ScaleLayout::Linear;
            micrometer_marks(spec, geo);
            break;
        case InstrumentKind::DialIndicator:
            geo.layout = ScaleLayout::Circular;
            dial_marks(spec, geo);
            break;
    }
    return geo;
}

MovingTransform moving_transform(const InstrumentSpec& spec, TickPosition pos) {
    require_in_range(spec, pos);
    switch (spec.kind) {
        case InstrumentKind::VernierCaliper:
        case InstrumentKind::Micrometer:
            return {MotionKind::Translation, spec.least_count() * Rational(pos.ticks)};
        case InstrumentKind::VernierProtractor:
            return {MotionKind::Rotation, spec.least_count() * Rational(pos.ticks)};
        case InstrumentKind::DialIndicator: {
            const std::int64_t d = revolution_divisions(spec);
            return {MotionKind::Rotation, Rational(360, d) * Rational(pos.ticks % d)};
        }
    }
    throw LabError(ErrorCode::Internal, "unknown instrument kind");
}

MovingTransform revolution_counter_transform(const InstrumentSpec& spec, TickPosition pos) {
    require_in_range(spec, pos);
    const std::int64_t d = revolution_divisions(spec);
    const std::int64_t revolutions_in_range = spec.range_max_ticks / d;
    const std::int64_t turns = (pos.ticks / d) % revolutions_in_range;
    return {MotionKind::Rotation, Rational(360, revolutions_in_range) * Rational(turns)};
}

std::vector<Rational> vernier_alignment_distances(const InstrumentSpec& spec, TickPosition pos) {
    require_vernier(spec);
    return vernier_alignment_distances(geometry_template(spec), pos);
}

std::vector<Rational> vernier_alignment_distances(const ScaleGeometry& geo, TickPosition pos) {
    const InstrumentSpec& spec = geo.spec;
    require_vernier(spec);
    require_in_range(spec, pos);
    const Rational offset = spec.least_count() * Rational(pos.ticks);

    std::vector<Rational> distances;
    distances.reserve(geo.moving_marks.size());
    for (const Mark& moving : geo.moving_marks) {
        const Rational placed = moving.position + offset;
        Rational nearest = abs(placed - geo.fixed_marks.front().position);
        for (const Mark& fixed : geo.fixed_marks) nearest = std::min(nearest, abs(placed - fixed.position));
        distances.push_back(nearest);
    }
    return distances;
}

std::int64_t best_aligned_mark(const InstrumentSpec& spec, TickPosition pos) {
    require_vernier(spec);
    return best_aligned_mark(geometry_template(spec), pos);
}

std::int64_t best_aligned_mark(const ScaleGeometry& geo, TickPosition pos) {
    const std::vector<Rational> distances = vernier_alignment_distances(geo, pos);
    // min_element keeps the first of equal minima: the smallest index wins ties.
    return std::min_element(distances.begin(), distances.end()) - distances.begin();
}

std::string reading_text(const InstrumentSpec& spec, TickPosition pos) {
    const Reading reading = decompose(spec, pos);
    const std::string value = format_value(spec, pos);
    const std::string unit(unit_symbol(spec.display_unit));
    const std::string lc = display_least_count(spec).to_decimal();

    return std::visit(
        overloaded{
            [&](const CaliperReading& r) {
                return "main " + std::to_string(r.main_mm) + " " + unit + " + vernier " +
                       std::to_string(r.vernier_index) + " × " + lc + " " + unit + " = " + value +
                       " " + unit;
            },
            [&](const MicrometerReading& r) {
                return "sleeve " + std::to_string(r.sleeve_divisions) + " × " +
                       spec.main_division().to_decimal() + " " + unit + " + thimble " +
                       std::to_string(r.thimble_index) + " × " + lc + " " + unit + " = " + value +
                       " " + unit;
            },
            [&](const DialReading& r) {
                return "revolutions " + std::to_string(r.revolutions) + " + dial " +
                       std::to_string(r.dial_index) + " × " + lc + " " + unit + " = " + value +
                       " " + unit;
            },
            [&](const ProtractorReading& r) {
                return "main " + std::to_string(r.degrees) + " " + unit + " + vernier " +
                       std::to_string(r.vernier_index) + " × " + lc + " " + unit + " = " + value +
                       " " + unit;
            },
        },
        reading);
}

}  // namespace vmlab
