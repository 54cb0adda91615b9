#pragma once

#include "vmlab/core_model.hpp"
#include "vmlab/instruments.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace vmlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // graded wrong, selftest failure
inline constexpr int kExitUsage = 2;   // bad arguments, bad input file, I/O failure

struct GenOptions {
    std::string instrument;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> out;
};

/// Worksheet CSV: `kind,target_ticks,display_answer`, one row per exercise.
std::string worksheet_csv(InstrumentKind kind, std::int64_t count, std::uint64_t seed);

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);

struct GradeOptions {
    std::filesystem::path answers;
    std::int64_t tolerance_ticks = 0;
};

/// Reads `kind,target_ticks,answer` rows, prints one verdict per row and a
/// `correct/total` summary. Rows whose answer text does not parse are
/// reported and left out of the total.
int cmd_grade(const GradeOptions& options, std::ostream& out, std::ostream& err);

struct RenderOptions {
    std::string instrument;
    std::int64_t ticks = 0;
    bool show_reading = false;
    std::string format = "json";  // json | svg
};

int cmd_render(const RenderOptions& options, std::ostream& out, std::ostream& err);

/// Offline bundle: pages, assets/ and templates/. Writing the same build
/// twice produces identical files.
int cmd_export(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// The functions under test, replaceable for fault injection.
struct SelftestChecks {
    std::function<Reading(const InstrumentSpec&, TickPosition)> decompose =
        [](const InstrumentSpec& s, TickPosition p) { return vmlab::decompose(s, p); };
    std::function<TickPosition(const InstrumentSpec&, const Reading&)> compose =
        [](const InstrumentSpec& s, const Reading& r) { return vmlab::compose(s, r); };
    std::function<std::int64_t(const InstrumentSpec&, TickPosition)> coincidence_index =
        [](const InstrumentSpec& s, TickPosition p) { return vmlab::coincidence_index(s, p); };
};

/// Exhaustive round-trip over every instrument and geometric vernier check
/// over every vernier position.
int cmd_selftest(std::ostream& out, std::ostream& err, const SelftestChecks& checks = {});

struct ServeOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path data_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> assets;
    std::int64_t tolerance_ticks = 0;
};

/// Blocks until SIGINT or SIGTERM.
int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err);

/// Argument parsing and dispatch for the `vmlab` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vmlab::cli
