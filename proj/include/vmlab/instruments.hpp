#pragma once

#include "vmlab/core_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vmlab {

// Scale components a student reads off each instrument.

struct CaliperReading {
    std::int64_t main_mm = 0;
    std::int64_t vernier_index = 0;
    friend bool operator==(const CaliperReading&, const CaliperReading&) = default;
};

struct MicrometerReading {
    std::int64_t sleeve_divisions = 0;  // passed 0.5 mm sleeve marks
    std::int64_t thimble_index = 0;
    friend bool operator==(const MicrometerReading&, const MicrometerReading&) = default;
};

struct DialReading {
    std::int64_t revolutions = 0;
    std::int64_t dial_index = 0;
    friend bool operator==(const DialReading&, const DialReading&) = default;
};

struct ProtractorReading {
    std::int64_t degrees = 0;
    std::int64_t vernier_index = 0;
    friend bool operator==(const ProtractorReading&, const ProtractorReading&) = default;
};

using Reading = std::variant<CaliperReading, MicrometerReading, DialReading, ProtractorReading>;

InstrumentKind kind_of(const Reading& reading) noexcept;

enum class ScaleRole { Fixed, Moving, Pointer };
enum class MarkTier { Major, Minor };

/// One graduation. Linear coordinates are in the display unit of the
/// instrument's dimension (mm); circular coordinates are degrees clockwise
/// from the zero mark.
struct Mark {
    ScaleRole scale = ScaleRole::Fixed;
    Rational position;
    MarkTier tier = MarkTier::Minor;
    std::optional<std::string> label;
    friend bool operator==(const Mark&, const Mark&) = default;
};

enum class ScaleLayout { Linear, Circular };

/// Position-independent mark layout. Moving marks are in the moving
/// scale's local frame; a MovingTransform places them.
struct ScaleGeometry {
    ScaleLayout layout = ScaleLayout::Linear;
    std::vector<Mark> fixed_marks;
    std::vector<Mark> moving_marks;
    std::vector<Mark> pointers;
    InstrumentSpec spec;
    friend bool operator==(const ScaleGeometry&, const ScaleGeometry&) = default;
};

enum class MotionKind { Translation, Rotation };

struct MovingTransform {
    MotionKind kind = MotionKind::Translation;
    Rational amount;  // mm for translation, degrees for rotation
    friend bool operator==(const MovingTransform&, const MovingTransform&) = default;
};

Reading decompose(const InstrumentSpec& spec, TickPosition pos);

/// Inverse of decompose. Throws LabError(OutOfRange) for a component outside
/// its bounds or a result past range_max_ticks, and LabError(InvalidArgument)
/// when the reading's tag does not match the spec's kind.
TickPosition compose(const InstrumentSpec& spec, const Reading& reading);

/// Index of the vernier mark that coincides with a fixed mark (pos mod N).
std::int64_t coincidence_index(const InstrumentSpec& spec, TickPosition pos);

ScaleGeometry geometry_template(const InstrumentSpec& spec);

MovingTransform moving_transform(const InstrumentSpec& spec, TickPosition pos);

/// Dial only: rotation of the revolution-counter hand, one full turn over the range.
MovingTransform revolution_counter_transform(const InstrumentSpec& spec, TickPosition pos);

/// For each vernier mark, the distance from its placed position to the
/// nearest fixed mark, found by scanning every fixed mark.
std::vector<Rational> vernier_alignment_distances(const InstrumentSpec& spec, TickPosition pos);

/// Same, reusing a template built once by the caller for sweeps.
std::vector<Rational> vernier_alignment_distances(const ScaleGeometry& geo, TickPosition pos);

/// Geometric definition of the vernier reading: the smallest index among the
/// marks with the least alignment distance.
std::int64_t best_aligned_mark(const InstrumentSpec& spec, TickPosition pos);
std::int64_t best_aligned_mark(const ScaleGeometry& geo, TickPosition pos);

/// One-line breakdown shown in show-reading mode, e.g.
/// "main 12 mm + vernier 3 × 0.1 mm = 12.3 mm".
std::string reading_text(const InstrumentSpec& spec, TickPosition pos);

}  // namespace vmlab
