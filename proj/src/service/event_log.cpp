#include "vmlab/event_log.hpp"

#include "vmlab/error.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace vmlab {

namespace {

constexpr std::string_view kPrefix = "events-";
constexpr std::string_view kSuffix = ".jsonl";

LabError storage_error(const std::string& what) { return LabError(ErrorCode::Internal, what); }

std::vector<fs::path> day_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with(kPrefix) && name.ends_with(kSuffix))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::ServerSeeded: return "server_seeded";
        case EventKind::SessionCreated: return "session_created";
        case EventKind::ExerciseIssued: return "exercise_issued";
        case EventKind::AttemptGraded: return "attempt_graded";
    }
    return "";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) noexcept {
    for (auto kind : {EventKind::ServerSeeded, EventKind::SessionCreated, EventKind::ExerciseIssued,
                      EventKind::AttemptGraded})
        if (to_string(kind) == text) return kind;
    return std::nullopt;
}

json to_json(const EventRecord& event) {
    return {
        {"seq", event.seq},
        {"session_id", event.session_id},
        {"kind", to_string(event.kind)},
        {"payload", event.payload},
        {"at", event.at.time_since_epoch().count()},
    };
}

EventRecord event_from_json(const json& j) {
    EventRecord event;
    event.seq = j.at("seq").get<std::uint64_t>();
    event.session_id = j.at("session_id").get<std::string>();
    const auto kind = event_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw storage_error("unknown event kind " + j.at("kind").dump());
    event.kind = *kind;
    event.payload = j.at("payload");
    event.at = Timestamp{std::chrono::milliseconds{j.at("at").get<std::int64_t>()}};
    return event;
}

std::string event_file_name(Timestamp at) {
    const std::chrono::year_month_day day{std::chrono::floor<std::chrono::days>(at)};
    char buf[32];
    std::snprintf(buf, sizeof buf, "events-%04d%02u%02u.jsonl", static_cast<int>(day.year()),
                  static_cast<unsigned>(day.month()), static_cast<unsigned>(day.day()));
    return buf;
}

EventLog::EventLog(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
        throw storage_error("cannot create data directory " + dir_.string() + ": " + ec.message());

    const fs::path probe = dir_ / ".write-probe";
    {
        std::ofstream out(probe, std::ios::trunc);
        if (!out || !(out << "ok") || !out.flush())
            throw storage_error("data directory " + dir_.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

std::vector<EventRecord> EventLog::replay() {
    std::vector<EventRecord> events;
    const std::vector<fs::path> files = day_files(dir_);
    if (!files.empty()) last_file_ = files.back().filename().string();
    for (std::size_t f = 0; f < files.size(); ++f) {
        std::ifstream in(files[f], std::ios::binary);
        if (!in) throw storage_error("cannot read " + files[f].string());
        std::stringstream buffer;
        buffer << in.rdbuf();
        const std::string content = buffer.str();

        std::size_t offset = 0;
        std::size_t line_no = 0;
        while (offset < content.size()) {
            const std::size_t newline = content.find('\n', offset);
            const bool terminated = newline != std::string::npos;
            const std::string line =
                content.substr(offset, terminated ? newline - offset : std::string::npos);
            ++line_no;

            json parsed = json::parse(line, nullptr, false);
            if (parsed.is_discarded()) {
                // A torn tail on the newest file is an interrupted append; anything
                // else is corruption.
                if (!terminated && f + 1 == files.size()) {
                    fs::resize_file(files[f], offset);
                    break;
                }
                throw storage_error(files[f].filename().string() + ":" + std::to_string(line_no) +
                                    ": unreadable event");
            }
            EventRecord event;
            try {
                event = event_from_json(parsed);
            } catch (const json::exception& e) {
                throw storage_error(files[f].filename().string() + ":" + std::to_string(line_no) +
                                    ": " + e.what());
            }
            if (event.seq <= last_seq_)
                throw storage_error(files[f].filename().string() + ":" + std::to_string(line_no) +
                                    ": sequence " + std::to_string(event.seq) +
                                    " does not follow " + std::to_string(last_seq_));
            last_seq_ = event.seq;
            events.push_back(std::move(event));
            if (!terminated) {
                // Complete record without its newline: restore the terminator.
                std::ofstream fix(files[f], std::ios::binary | std::ios::app);
                fix << '\n';
                break;
            }
            offset = newline + 1;
        }
    }
    return events;
}

const EventRecord& EventLog::append(EventRecord& event) {
    event.seq = last_seq_ + 1;
    last_file_ = std::max(last_file_, event_file_name(event.at));
    const fs::path file = dir_ / last_file_;
    std::ofstream out(file, std::ios::binary | std::ios::app);
    if (!out) throw storage_error("cannot open " + file.string() + " for append");
    out << to_json(event).dump() << '\n';
    out.flush();
    if (!out) throw storage_error("write to " + file.string() + " failed");
    last_seq_ = event.seq;
    return event;
}

}  // namespace vmlab
