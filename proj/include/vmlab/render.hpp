#pragma once

#include "vmlab/core_model.hpp"
#include "vmlab/json_codec.hpp"

#include <string>

namespace vmlab {

/// Template, transform and (optionally) reading text as one JSON document.
json geometry_document(const InstrumentSpec& spec, TickPosition pos, bool show_reading);

/// Deterministic SVG drawing of the instrument at a position: fixed canvas
/// per layout, marks as lines, labels as text, six-decimal coordinates, no
/// timestamps. With show_reading the coinciding vernier mark is drawn in red
/// and the reading breakdown is printed under the scales.
std::string render_svg(const InstrumentSpec& spec, TickPosition pos, bool show_reading);

}  // namespace vmlab
