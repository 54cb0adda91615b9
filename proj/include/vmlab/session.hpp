#pragma once

#include "vmlab/core_model.hpp"
#include "vmlab/exercise.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vmlab {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

struct AttemptRecord {
    std::string exercise_id;
    InstrumentKind kind = InstrumentKind::VernierCaliper;
    std::string answer_raw;
    Verdict verdict = Verdict::Incorrect;
    Timestamp at{};

    friend bool operator==(const AttemptRecord&, const AttemptRecord&) = default;
};

/// A student's sitting: identity plus an append-only attempt log.
class Session {
  public:
    Session(std::string id, Timestamp created_at) : id_(std::move(id)), created_at_(created_at) {}

    const std::string& id() const noexcept { return id_; }
    Timestamp created_at() const noexcept { return created_at_; }
    std::span<const AttemptRecord> attempts() const noexcept { return attempts_; }

    void record(AttemptRecord attempt) { attempts_.push_back(std::move(attempt)); }

    friend bool operator==(const Session&, const Session&) = default;

  private:
    std::string id_;
    Timestamp created_at_;
    std::vector<AttemptRecord> attempts_;
};

struct Tally {
    std::int64_t attempts = 0;
    std::int64_t correct = 0;

    /// correct / attempts, 0 when nothing was attempted.
    double accuracy() const noexcept {
        return attempts == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(attempts);
    }

    friend bool operator==(const Tally&, const Tally&) = default;
};

struct SessionStats {
    Tally overall;
    std::array<Tally, kAllKinds.size()> per_kind{};  // indexed in kAllKinds order

    const Tally& for_kind(InstrumentKind kind) const noexcept {
        return per_kind[static_cast<std::size_t>(kind)];
    }

    friend bool operator==(const SessionStats&, const SessionStats&) = default;
};

SessionStats session_stats(std::span<const AttemptRecord> attempts);

inline SessionStats session_stats(const Session& session) {
    return session_stats(session.attempts());
}

}  // namespace vmlab
