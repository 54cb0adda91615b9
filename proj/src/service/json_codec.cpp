#include "vmlab/json_codec.hpp"

#include "vmlab/error.hpp"

namespace vmlab {

namespace {

std::string_view to_string(ScaleRole role) {
    switch (role) {
        case ScaleRole::Fixed: return "fixed";
        case ScaleRole::Moving: return "moving";
        case ScaleRole::Pointer: return "pointer";
    }
    return "";
}

json to_json(const Mark& m) {
    json j = {
        {"scale", to_string(m.scale)},
        {"position", to_json(m.position)},
        {"tier", m.tier == MarkTier::Major ? "major" : "minor"},
    };
    if (m.label) j["label"] = *m.label;
    return j;
}

json marks_json(const std::vector<Mark>& marks) {
    json out = json::array();
    for (const Mark& m : marks) out.push_back(to_json(m));
    return out;
}

}  // namespace

json to_json(const Rational& r) { return json{{"num", r.num()}, {"den", r.den()}}; }

Rational rational_from_json(const json& j) {
    return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

json to_json(const InstrumentSpec& spec) {
    json j = {
        {"kind", slug(spec.kind)},
        {"dimension", spec.dimension == Dimension::Length ? "length" : "angle"},
        {"least_count", to_json(spec.least_count())},
        {"range_max_ticks", spec.range_max_ticks},
        {"main_division_ticks", spec.main_division_ticks},
        {"display_unit", unit_symbol(spec.display_unit)},
        {"display_decimals", spec.display_decimals},
    };
    if (spec.vernier_divisions) j["vernier_divisions"] = *spec.vernier_divisions;
    if (spec.divisions_per_revolution) j["divisions_per_revolution"] = *spec.divisions_per_revolution;
    return j;
}

json to_json(const Reading& reading) {
    return std::visit(
        [](const auto& r) -> json {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, CaliperReading>)
                return {{"main_mm", r.main_mm}, {"vernier_index", r.vernier_index}};
            else if constexpr (std::is_same_v<T, MicrometerReading>)
                return {{"sleeve_divisions", r.sleeve_divisions}, {"thimble_index", r.thimble_index}};
            else if constexpr (std::is_same_v<T, DialReading>)
                return {{"revolutions", r.revolutions}, {"dial_index", r.dial_index}};
            else
                return {{"degrees", r.degrees}, {"vernier_index", r.vernier_index}};
        },
        reading);
}

json to_json(const MovingTransform& transform) {
    return {
        {"kind", transform.kind == MotionKind::Translation ? "translation" : "rotation"},
        {"amount", to_json(transform.amount)},
    };
}

json to_json(const ScaleGeometry& geometry) {
    return {
        {"kind", slug(geometry.spec.kind)},
        {"layout", geometry.layout == ScaleLayout::Linear ? "linear" : "circular"},
        {"spec", to_json(geometry.spec)},
        {"fixed_marks", marks_json(geometry.fixed_marks)},
        {"moving_marks", marks_json(geometry.moving_marks)},
        {"pointers", marks_json(geometry.pointers)},
    };
}

json to_json(const Tally& tally) {
    return {{"attempts", tally.attempts}, {"correct", tally.correct}, {"accuracy", tally.accuracy()}};
}

json to_json(const SessionStats& stats) {
    json per_kind = json::object();
    for (auto kind : kAllKinds) per_kind[std::string(slug(kind))] = to_json(stats.for_kind(kind));
    return {{"overall", to_json(stats.overall)}, {"per_kind", per_kind}};
}

json catalog_entry(const InstrumentSpec& spec) {
    const std::string unit(unit_symbol(spec.display_unit));
    return {
        {"kind", slug(spec.kind)},
        {"display_name", display_name(spec.kind)},
        {"least_count", display_least_count(spec).to_decimal() + " " + unit},
        {"display_unit", unit},
        {"range_max_ticks", spec.range_max_ticks},
    };
}

json transform_document(const InstrumentSpec& spec, TickPosition pos) {
    json j = {{"kind", slug(spec.kind)}, {"transform", to_json(moving_transform(spec, pos))}};
    if (spec.divisions_per_revolution)
        j["revolution_counter"] = to_json(revolution_counter_transform(spec, pos));
    return j;
}

json reading_document(const InstrumentSpec& spec, TickPosition pos) {
    json j = transform_document(spec, pos);
    j["ticks"] = pos.ticks;
    j["reading"] = to_json(decompose(spec, pos));
    j["text"] = reading_text(spec, pos);
    j["display_value"] = format_value(spec, pos);
    if (spec.has_vernier()) j["coincidence_index"] = coincidence_index(spec, pos);
    return j;
}

}  // namespace vmlab
