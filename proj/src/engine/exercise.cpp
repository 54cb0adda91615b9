#include "vmlab/exercise.hpp"

#include "vmlab/error.hpp"
#include "vmlab/instruments.hpp"
#include "vmlab/session.hpp"

namespace vmlab {

std::int64_t uniform_ticks(Generator& gen, std::int64_t lo, std::int64_t hi) {
    if (lo > hi)
        throw LabError(ErrorCode::InvalidArgument,
                       "empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    using u128 = unsigned __int128;
    const u128 n = static_cast<u128>(static_cast<__int128>(hi) - lo + 1);
    const u128 limit = ((u128(1) << 64) / n) * n;
    std::uint64_t z = gen.next_u64();
    while (z >= limit) z = gen.next_u64();
    return static_cast<std::int64_t>(static_cast<__int128>(lo) + static_cast<__int128>(z % n));
}

Exercise next_exercise(Generator& gen, const InstrumentSpec& spec,
                       std::optional<TickPosition> previous_target, std::string id) {
    Exercise ex;
    ex.id = std::move(id);
    ex.kind = spec.kind;
    ex.seed_index = gen.draws();
    ex.target = TickPosition{uniform_ticks(gen, 1, spec.range_max_ticks)};
    if (previous_target && ex.target == *previous_target)
        ex.target = TickPosition{uniform_ticks(gen, 1, spec.range_max_ticks)};
    ex.state = ExerciseState::Open;
    return ex;
}

std::string_view to_string(Verdict verdict) noexcept {
    return verdict == Verdict::Correct ? "correct" : "incorrect";
}

std::optional<Verdict> verdict_from_string(std::string_view text) noexcept {
    if (text == "correct") return Verdict::Correct;
    if (text == "incorrect") return Verdict::Incorrect;
    return std::nullopt;
}

Verdict judge(const InstrumentSpec& spec, TickPosition target, std::string_view answer_text,
              std::int64_t tolerance_ticks) {
    if (tolerance_ticks < 0)
        throw LabError(ErrorCode::InvalidArgument, "tolerance must be non-negative");
    const ExactValue answer = parse_answer(spec, answer_text);
    const ExactValue truth = ticks_to_value(spec, target);
    const Rational allowed = display_least_count(spec) * Rational(tolerance_ticks);
    return abs(answer.amount - truth.amount) <= allowed ? Verdict::Correct : Verdict::Incorrect;
}

GradeResult grade(const InstrumentSpec& spec, Exercise& ex, std::string_view answer_text,
                  std::int64_t tolerance_ticks, RevealPolicy reveal) {
    if (ex.state != ExerciseState::Open)
        throw LabError(ErrorCode::AlreadyAnswered, "exercise " + ex.id + " was already answered");
    if (ex.kind != spec.kind)
        throw LabError(ErrorCode::InvalidArgument, "exercise kind does not match instrument");

    const Verdict verdict = judge(spec, ex.target, answer_text, tolerance_ticks);
    ex.state = ExerciseState::Answered;

    GradeResult result;
    result.verdict = verdict;
    result.message = std::string(verdict == Verdict::Correct ? kWellDone : kWrongAnswer);
    if (reveal == RevealPolicy::Always ||
        (reveal == RevealPolicy::OnIncorrect && verdict == Verdict::Incorrect))
        result.correct_value = format_value(spec, ex.target);
    return result;
}

std::string reveal(const InstrumentSpec& spec, const Exercise& ex) {
    return reading_text(spec, ex.target);
}

SessionStats session_stats(std::span<const AttemptRecord> attempts) {
    SessionStats stats;
    for (const AttemptRecord& a : attempts) {
        const int hit = a.verdict == Verdict::Correct ? 1 : 0;
        Tally& kind = stats.per_kind[static_cast<std::size_t>(a.kind)];
        ++kind.attempts;
        kind.correct += hit;
        ++stats.overall.attempts;
        stats.overall.correct += hit;
    }
    return stats;
}

}  // namespace vmlab
