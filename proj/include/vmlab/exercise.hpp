#pragma once

#include "vmlab/core_model.hpp"
#include "vmlab/generator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vmlab {

inline constexpr std::string_view kWellDone = "Well done";
inline constexpr std::string_view kWrongAnswer = "Sorry, wrong answer!";

enum class ExerciseState { Open, Answered };

/// A hidden-target reading trial. The target never leaves the server.
struct Exercise {
    std::string id;
    InstrumentKind kind = InstrumentKind::VernierCaliper;
    TickPosition target;
    std::uint64_t seed_index = 0;  // generator draws consumed before this exercise
    ExerciseState state = ExerciseState::Open;

    friend bool operator==(const Exercise&, const Exercise&) = default;
};

/// Draws a target in [1, range_max_ticks]. If it repeats previous_target the
/// draw is repeated once and the second value kept whatever it is.
Exercise next_exercise(Generator& gen, const InstrumentSpec& spec,
                       std::optional<TickPosition> previous_target, std::string id);

enum class Verdict { Correct, Incorrect };

std::string_view to_string(Verdict verdict) noexcept;
std::optional<Verdict> verdict_from_string(std::string_view text) noexcept;

enum class RevealPolicy { Never, OnIncorrect, Always };

struct GradeResult {
    Verdict verdict = Verdict::Incorrect;
    std::string message;
    std::optional<std::string> correct_value;
};

/// Grades a typed answer and closes the exercise.
///
/// Correct iff |answer - true value| <= tolerance_ticks least counts, compared
/// exactly. Malformed text throws LabError(MalformedInput) and leaves the
/// exercise open; a closed exercise throws LabError(AlreadyAnswered).
GradeResult grade(const InstrumentSpec& spec, Exercise& ex, std::string_view answer_text,
                  std::int64_t tolerance_ticks = 0, RevealPolicy reveal = RevealPolicy::Never);

/// Verdict only; no exercise state involved.
Verdict judge(const InstrumentSpec& spec, TickPosition target, std::string_view answer_text,
              std::int64_t tolerance_ticks = 0);

/// Show-reading text for the target. Does not close the exercise.
std::string reveal(const InstrumentSpec& spec, const Exercise& ex);

}  // namespace vmlab
