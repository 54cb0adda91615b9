#pragma once

#include "vmlab/error.hpp"
#include "vmlab/event_log.hpp"
#include "vmlab/exercise.hpp"
#include "vmlab/generator.hpp"
#include "vmlab/json_codec.hpp"
#include "vmlab/session.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace vmlab {

/// HTTP-facing error shape. The code/status pairing is fixed.
struct ApiError {
    std::string code;
    std::string message;
    int http_status = 500;
};

ApiError to_api_error(const LabError& error);

/// 22 lowercase letters from the system entropy source (> 96 bits).
std::string random_id();

/// Seed for the server generator when none is configured.
std::uint64_t entropy_seed();

struct ServiceOptions {
    std::filesystem::path data_dir;
    /// Used only when the data directory holds no events yet.
    std::optional<std::uint64_t> seed;
    std::int64_t tolerance_ticks = 0;
    std::function<Timestamp()> clock;            // defaults to system_clock
    std::function<std::string()> id_source;      // defaults to random_id
};

/**
 * Sessions, exercises and grading behind the HTTP API, independent of the
 * transport.
 *
 * Every state change is appended to the event log before it becomes
 * visible, and construction replays the log, so a restarted service resumes
 * the same sessions, open exercises and generator stream. One mutex
 * serializes all mutations and gives readers a consistent snapshot.
 *
 * Handlers report failures by throwing LabError.
 */
class LabService {
  public:
    explicit LabService(ServiceOptions options);

    json create_session();
    json list_instruments() const;

    /// Serialized geometry template, identical bytes for the life of the build.
    const std::string& template_body(std::string_view kind) const;

    json get_reading(std::string_view kind, std::int64_t ticks) const;

    /// Response carries only {exercise_id, kind}; the target stays server side.
    json issue_exercise(const std::string& session_id, std::string_view kind);

    /// Moving-scale placement for an issued exercise, the only thing a quiz
    /// client needs to draw the instrument.
    json exercise_transform(const std::string& session_id, const std::string& exercise_id) const;

    json submit_answer(const std::string& session_id, const std::string& exercise_id,
                       std::string_view text);

    json get_stats(const std::string& session_id) const;

    std::uint64_t seed() const;
    std::uint64_t event_count() const;
    const std::filesystem::path& data_dir() const noexcept { return options_.data_dir; }

  private:
    struct IssuedExercise {
        std::string session_id;
        Exercise exercise;
    };

    struct SessionState {
        Session session;
        std::map<InstrumentKind, TickPosition> last_target;
    };

    void apply(const EventRecord& event);
    void record(EventKind kind, const std::string& session_id, json payload);
    SessionState& find_session(const std::string& session_id);
    const SessionState& find_session(const std::string& session_id) const;
    const IssuedExercise& find_exercise(const std::string& session_id,
                                        const std::string& exercise_id) const;
    Timestamp now() const;

    ServiceOptions options_;
    std::map<InstrumentKind, std::string> templates_;

    mutable std::mutex mutex_;
    EventLog log_;
    std::uint64_t seed_ = 0;
    Generator generator_{0};
    std::map<std::string, SessionState> sessions_;
    std::map<std::string, IssuedExercise> exercises_;
};

}  // namespace vmlab
