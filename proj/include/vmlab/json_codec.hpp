#pragma once

#include "vmlab/core_model.hpp"
#include "vmlab/instruments.hpp"
#include "vmlab/session.hpp"

#include <json.hpp>

namespace vmlab {

using json = nlohmann::json;

/// {"num": n, "den": d}
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const InstrumentSpec& spec);
json to_json(const Reading& reading);
json to_json(const MovingTransform& transform);
json to_json(const ScaleGeometry& geometry);
json to_json(const Tally& tally);

/// {"overall": {...}, "per_kind": {"caliper": {...}, ...}}
json to_json(const SessionStats& stats);

/// One catalog entry: kind, display_name, least_count ("0.1 mm"), display_unit, range_max_ticks.
json catalog_entry(const InstrumentSpec& spec);

/// decompose + reading_text + format_value + transform(s) for one position.
json reading_document(const InstrumentSpec& spec, TickPosition pos);

/// Moving-scale placement for a position, plus the dial's revolution hand.
json transform_document(const InstrumentSpec& spec, TickPosition pos);

}  // namespace vmlab
