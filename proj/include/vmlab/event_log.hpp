#pragma once

#include "vmlab/json_codec.hpp"
#include "vmlab/session.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vmlab {

enum class EventKind { ServerSeeded, SessionCreated, ExerciseIssued, AttemptGraded };

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view text) noexcept;

struct EventRecord {
    std::uint64_t seq = 0;
    std::string session_id;
    EventKind kind = EventKind::SessionCreated;
    json payload = json::object();
    Timestamp at{};
};

json to_json(const EventRecord& event);
EventRecord event_from_json(const json& j);

/// `events-YYYYMMDD.jsonl`, dated by the event's UTC day.
std::string event_file_name(Timestamp at);

/**
 * Append-only JSON-lines event log spread over one file per UTC day.
 *
 * Not thread-safe; the owner serializes access. Opening the log creates the
 * directory and probes it for writability. replay() reads every day file in
 * name order, checks that sequence numbers strictly increase, and trims a
 * torn final line left by a crash mid-append.
 */
class EventLog {
  public:
    explicit EventLog(std::filesystem::path dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }

    std::vector<EventRecord> replay();

    /// Assigns the next sequence number, writes and flushes one line.
    const EventRecord& append(EventRecord& event);

    std::uint64_t last_seq() const noexcept { return last_seq_; }

  private:
    std::filesystem::path dir_;
    std::uint64_t last_seq_ = 0;
    std::string last_file_;  // appends never go to an earlier day file than this
};

}  // namespace vmlab
