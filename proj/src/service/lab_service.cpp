#include "vmlab/lab_service.hpp"

#include "vmlab/instruments.hpp"

#include <random>

namespace vmlab {

namespace {

InstrumentKind require_kind(std::string_view text) {
    const auto kind = kind_from_slug(text);
    if (!kind) throw LabError(ErrorCode::NotFound, "unknown instrument '" + std::string(text) + "'");
    return *kind;
}

}  // namespace

ApiError to_api_error(const LabError& error) {
    switch (error.code()) {
        case ErrorCode::MalformedInput: return {"malformed_input", error.what(), 422};
        case ErrorCode::NotFound: return {"not_found", error.what(), 404};
        case ErrorCode::AlreadyAnswered: return {"already_answered", error.what(), 409};
        case ErrorCode::OutOfRange: return {"out_of_range", error.what(), 422};
        case ErrorCode::InvalidArgument:
        case ErrorCode::Internal: break;
    }
    return {"internal", error.what(), 500};
}

std::string random_id() {
    static thread_local std::random_device device;
    std::uniform_int_distribution<int> letter(0, 25);
    std::string id(22, 'a');
    for (char& c : id) c = static_cast<char>('a' + letter(device));
    return id;
}

std::uint64_t entropy_seed() {
    std::random_device device;
    return (std::uint64_t{device()} << 32) ^ device();
}

LabService::LabService(ServiceOptions options)
    : options_(std::move(options)), log_(options_.data_dir) {
    if (!options_.clock)
        options_.clock = [] {
            return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
        };
    if (!options_.id_source) options_.id_source = random_id;

    for (auto kind : kAllKinds)
        templates_[kind] = to_json(geometry_template(default_spec(kind))).dump();

    bool seeded = false;
    for (const EventRecord& event : log_.replay()) {
        try {
            apply(event);
        } catch (const json::exception& e) {
            throw LabError(ErrorCode::Internal,
                           "event " + std::to_string(event.seq) + " is inconsistent: " + e.what());
        }
        seeded = seeded || event.kind == EventKind::ServerSeeded;
    }
    if (!seeded) record(EventKind::ServerSeeded, "", {{"seed", options_.seed.value_or(entropy_seed())}});
}

Timestamp LabService::now() const { return options_.clock(); }

void LabService::record(EventKind kind, const std::string& session_id, json payload) {
    EventRecord event;
    event.session_id = session_id;
    event.kind = kind;
    event.payload = std::move(payload);
    event.at = now();
    log_.append(event);
    apply(event);
}

void LabService::apply(const EventRecord& event) {
    const json& p = event.payload;
    switch (event.kind) {
        case EventKind::ServerSeeded:
            seed_ = p.at("seed").get<std::uint64_t>();
            generator_ = Generator(seed_);
            break;

        case EventKind::SessionCreated:
            sessions_.emplace(event.session_id, SessionState{Session(event.session_id, event.at), {}});
            break;

        case EventKind::ExerciseIssued: {
            SessionState& state = find_session(event.session_id);
            Exercise ex;
            ex.id = p.at("exercise_id").get<std::string>();
            ex.kind = require_kind(p.at("kind").get<std::string>());
            ex.target = TickPosition{p.at("target").get<std::int64_t>()};
            ex.seed_index = p.at("seed_index").get<std::uint64_t>();
            generator_ = Generator(p.at("generator_state").get<std::uint64_t>(),
                                   p.at("generator_draws").get<std::uint64_t>());
            state.last_target[ex.kind] = ex.target;
            exercises_[ex.id] = IssuedExercise{event.session_id, ex};
            break;
        }

        case EventKind::AttemptGraded: {
            SessionState& state = find_session(event.session_id);
            const std::string exercise_id = p.at("exercise_id").get<std::string>();
            auto it = exercises_.find(exercise_id);
            if (it == exercises_.end())
                throw LabError(ErrorCode::Internal, "attempt for unknown exercise " + exercise_id);
            it->second.exercise.state = ExerciseState::Answered;
            const auto verdict = verdict_from_string(p.at("verdict").get<std::string>());
            if (!verdict) throw LabError(ErrorCode::Internal, "bad verdict in event log");
            state.session.record(AttemptRecord{exercise_id, it->second.exercise.kind,
                                               p.at("answer_raw").get<std::string>(), *verdict, event.at});
            break;
        }
    }
}

LabService::SessionState& LabService::find_session(const std::string& session_id) {
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw LabError(ErrorCode::NotFound, "unknown session");
    return it->second;
}

const LabService::SessionState& LabService::find_session(const std::string& session_id) const {
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw LabError(ErrorCode::NotFound, "unknown session");
    return it->second;
}

const LabService::IssuedExercise& LabService::find_exercise(const std::string& session_id,
                                                            const std::string& exercise_id) const {
    find_session(session_id);
    auto it = exercises_.find(exercise_id);
    // Another session's exercise is indistinguishable from a missing one.
    if (it == exercises_.end() || it->second.session_id != session_id)
        throw LabError(ErrorCode::NotFound, "unknown exercise");
    return it->second;
}

json LabService::create_session() {
    std::lock_guard lock(mutex_);
    std::string id = options_.id_source();
    while (sessions_.contains(id)) id = options_.id_source();
    record(EventKind::SessionCreated, id, {{"created_at", now().time_since_epoch().count()}});
    return {{"session_id", id}};
}

json LabService::list_instruments() const {
    json entries = json::array();
    for (auto kind : kAllKinds) entries.push_back(catalog_entry(default_spec(kind)));
    return {{"instruments", entries}};
}

const std::string& LabService::template_body(std::string_view kind) const {
    return templates_.at(require_kind(kind));
}

json LabService::get_reading(std::string_view kind, std::int64_t ticks) const {
    return reading_document(default_spec(require_kind(kind)), TickPosition{ticks});
}

json LabService::issue_exercise(const std::string& session_id, std::string_view kind_text) {
    std::lock_guard lock(mutex_);
    SessionState& state = find_session(session_id);
    const InstrumentKind kind = require_kind(kind_text);
    const InstrumentSpec spec = default_spec(kind);

    std::optional<TickPosition> previous;
    if (auto it = state.last_target.find(kind); it != state.last_target.end()) previous = it->second;

    std::string id = options_.id_source();
    while (exercises_.contains(id)) id = options_.id_source();

    Generator next = generator_;
    const Exercise ex = next_exercise(next, spec, previous, id);
    record(EventKind::ExerciseIssued, session_id,
           {
               {"exercise_id", ex.id},
               {"kind", slug(kind)},
               {"target", ex.target.ticks},
               {"seed_index", ex.seed_index},
               {"generator_state", next.state()},
               {"generator_draws", next.draws()},
           });
    return {{"exercise_id", ex.id}, {"kind", slug(kind)}};
}

json LabService::exercise_transform(const std::string& session_id,
                                    const std::string& exercise_id) const {
    std::lock_guard lock(mutex_);
    const IssuedExercise& issued = find_exercise(session_id, exercise_id);
    json doc = transform_document(default_spec(issued.exercise.kind), issued.exercise.target);
    doc["exercise_id"] = exercise_id;
    return doc;
}

json LabService::submit_answer(const std::string& session_id, const std::string& exercise_id,
                               std::string_view text) {
    std::lock_guard lock(mutex_);
    const IssuedExercise& issued = find_exercise(session_id, exercise_id);
    Exercise trial = issued.exercise;
    const GradeResult result =
        grade(default_spec(trial.kind), trial, text, options_.tolerance_ticks);
    record(EventKind::AttemptGraded, session_id,
           {
               {"exercise_id", exercise_id},
               {"kind", slug(trial.kind)},
               {"answer_raw", std::string(text)},
               {"verdict", to_string(result.verdict)},
           });
    return {{"verdict", to_string(result.verdict)}, {"message", result.message}};
}

json LabService::get_stats(const std::string& session_id) const {
    std::lock_guard lock(mutex_);
    const SessionState& state = find_session(session_id);
    json doc = to_json(session_stats(state.session));
    doc["session_id"] = session_id;
    return doc;
}

std::uint64_t LabService::seed() const {
    std::lock_guard lock(mutex_);
    return seed_;
}

std::uint64_t LabService::event_count() const {
    std::lock_guard lock(mutex_);
    return log_.last_seq();
}

}  // namespace vmlab
