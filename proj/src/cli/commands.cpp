#include "vmlab/cli.hpp"

#include "vmlab/error.hpp"
#include "vmlab/exercise.hpp"
#include "vmlab/generator.hpp"
#include "vmlab/http_server.hpp"
#include "vmlab/lab_service.hpp"
#include "vmlab/pages.hpp"
#include "vmlab/render.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace vmlab::cli {

namespace fs = std::filesystem;

namespace {

std::optional<InstrumentKind> resolve_kind(const std::string& text, std::ostream& err) {
    auto kind = kind_from_slug(text);
    if (!kind) err << "error: unknown instrument '" << text << "' (caliper, micrometer, dial, protractor)\n";
    return kind;
}

bool write_file(const fs::path& path, std::string_view content, std::ostream& err) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << content;
    file.close();
    if (!file) {
        err << "error: cannot write " << path.string() << "\n";
        return false;
    }
    return true;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
    return value;
}

// One CSV record: comma separated, double-quoted fields may contain commas
// and doubled quotes. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_csv(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) return std::nullopt;
    return fields;
}

std::string csv_quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string worksheet_csv(InstrumentKind kind, std::int64_t count, std::uint64_t seed) {
    const InstrumentSpec spec = default_spec(kind);
    Generator gen(seed);
    std::optional<TickPosition> previous;
    std::string csv = "kind,target_ticks,display_answer\n";
    for (std::int64_t i = 0; i < count; ++i) {
        const Exercise ex = next_exercise(gen, spec, previous, std::to_string(i + 1));
        previous = ex.target;
        csv += std::string(slug(kind)) + "," + std::to_string(ex.target.ticks) + "," +
               format_value(spec, ex.target) + "\n";
    }
    return csv;
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
    const auto kind = resolve_kind(options.instrument, err);
    if (!kind) return kExitUsage;
    if (options.count < 1) {
        err << "error: --count must be at least 1\n";
        return kExitUsage;
    }
    const std::string csv = worksheet_csv(*kind, options.count, options.seed);
    if (!options.out) {
        out << csv;
        return kExitOk;
    }
    return write_file(*options.out, csv, err) ? kExitOk : kExitUsage;
}

int cmd_grade(const GradeOptions& options, std::ostream& out, std::ostream& err) {
    std::ifstream in(options.answers, std::ios::binary);
    if (!in) {
        err << "error: cannot read " << options.answers.string() << "\n";
        return kExitUsage;
    }
    const std::string name = options.answers.filename().string();
    auto fail = [&](std::size_t line, std::size_t column, const std::string& what) {
        err << name << ":" << line << ":" << column << ": " << what << "\n";
        return kExitUsage;
    };

    std::string line;
    std::size_t line_no = 0;
    std::int64_t correct = 0, total = 0, malformed = 0;
    std::ostringstream report;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
            if (line != "kind,target_ticks,answer")
                return fail(1, 1, "expected header 'kind,target_ticks,answer'");
            continue;
        }
        if (line.empty()) continue;

        const auto fields = split_csv(line);
        if (!fields) return fail(line_no, 1, "unterminated quoted field");
        if (fields->size() != 3)
            return fail(line_no, 1, "expected 3 fields, found " + std::to_string(fields->size()));
        const auto kind = kind_from_slug((*fields)[0]);
        if (!kind) return fail(line_no, 1, "unknown instrument '" + (*fields)[0] + "'");
        const InstrumentSpec spec = default_spec(*kind);
        const auto ticks = parse_int((*fields)[1]);
        if (!ticks) return fail(line_no, 2, "target_ticks must be an integer");
        if (!in_range(spec, TickPosition{*ticks}))
            return fail(line_no, 2,
                        "target_ticks out of range 0.." + std::to_string(spec.range_max_ticks));

        const std::string& answer = (*fields)[2];
        report << "row " << line_no << ": " << (*fields)[0] << " " << *ticks << " " << csv_quote(answer)
               << " -> ";
        try {
            const Verdict v = judge(spec, TickPosition{*ticks}, answer, options.tolerance_ticks);
            ++total;
            if (v == Verdict::Correct) {
                ++correct;
                report << kWellDone << "\n";
            } else {
                report << kWrongAnswer << "\n";
            }
        } catch (const LabError& e) {
            if (e.code() != ErrorCode::MalformedInput) throw;
            ++malformed;
            report << "malformed answer, not graded\n";
        }
    }
    if (line_no == 0) return fail(1, 1, "empty file");

    out << report.str() << correct << "/" << total << " correct";
    if (malformed > 0) out << " (" << malformed << " malformed, not graded)";
    out << "\n";
    return correct == total && malformed == 0 ? kExitOk : kExitFailed;
}

int cmd_render(const RenderOptions& options, std::ostream& out, std::ostream& err) {
    const auto kind = resolve_kind(options.instrument, err);
    if (!kind) return kExitUsage;
    if (options.format != "json" && options.format != "svg") {
        err << "error: --format must be json or svg\n";
        return kExitUsage;
    }
    const InstrumentSpec spec = default_spec(*kind);
    const TickPosition pos{options.ticks};
    if (!in_range(spec, pos)) {
        err << "error: out_of_range: ticks " << options.ticks << " outside 0.." << spec.range_max_ticks
            << "\n";
        return kExitUsage;
    }
    if (options.format == "svg")
        out << render_svg(spec, pos, options.show_reading);
    else
        out << geometry_document(spec, pos, options.show_reading).dump(2) << "\n";
    return kExitOk;
}

int cmd_export(const fs::path& dir, std::ostream& out, std::ostream& err) {
    std::vector<std::pair<fs::path, std::string>> files;
    files.emplace_back("index.html", home_page(SiteFlavor::Offline));
    files.emplace_back("safety.html", safety_page(SiteFlavor::Offline));
    files.emplace_back("assets/lab.js", std::string(lab_script()));
    files.emplace_back("assets/lab.css", std::string(lab_stylesheet()));
    for (auto kind : kAllKinds) {
        const std::string s(slug(kind));
        const std::string body = to_json(geometry_template(default_spec(kind))).dump();
        files.emplace_back("lab-" + s + ".html", lab_page(kind, SiteFlavor::Offline));
        files.emplace_back("templates/" + s + ".json", body + "\n");
        files.emplace_back("templates/" + s + ".js",
                           "window.VMLAB_TEMPLATES = window.VMLAB_TEMPLATES || {};\n"
                           "window.VMLAB_TEMPLATES[\"" + s + "\"] = " + body + ";\n");
    }
    for (const auto& [rel, content] : files)
        if (!write_file(dir / rel, content, err)) return kExitUsage;
    out << "wrote " << files.size() << " files to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_selftest(std::ostream& out, std::ostream& err, const SelftestChecks& checks) {
    const auto started = std::chrono::steady_clock::now();

    std::int64_t round_ok = 0, round_total = 0;
    for (auto kind : kAllKinds) {
        const InstrumentSpec spec = default_spec(kind);
        for (std::int64_t t = 0; t <= spec.range_max_ticks; ++t) {
            ++round_total;
            const TickPosition pos{t};
            try {
                if (checks.compose(spec, checks.decompose(spec, pos)) == pos) {
                    ++round_ok;
                    continue;
                }
            } catch (const LabError&) {
            }
            if (round_total - round_ok <= 3) err << "roundtrip mismatch: " << slug(kind) << " " << t << "\n";
        }
    }

    std::int64_t coin_ok = 0, coin_total = 0;
    for (auto kind : kAllKinds) {
        const InstrumentSpec spec = default_spec(kind);
        if (!spec.has_vernier()) continue;
        const ScaleGeometry geo = geometry_template(spec);
        for (std::int64_t t = 0; t <= spec.range_max_ticks; ++t) {
            ++coin_total;
            const TickPosition pos{t};
            if (checks.coincidence_index(spec, pos) == best_aligned_mark(geo, pos)) {
                ++coin_ok;
            } else if (coin_total - coin_ok <= 3) {
                err << "coincidence mismatch: " << slug(kind) << " " << t << "\n";
            }
        }
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const bool passed = round_ok == round_total && coin_ok == coin_total;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f", seconds);
    out << "roundtrip " << round_ok << "/" << round_total << (round_ok == round_total ? " ok" : " FAIL")
        << ", coincidence " << coin_ok << "/" << coin_total << (coin_ok == coin_total ? " ok" : " FAIL")
        << " (" << timing << " s)\n";
    return passed ? kExitOk : kExitFailed;
}

int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err) {
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);

    std::optional<LabService> service;
    try {
        ServiceOptions so;
        so.data_dir = options.data_dir;
        so.seed = options.seed;
        so.tolerance_ticks = options.tolerance_ticks;
        service.emplace(std::move(so));
    } catch (const LabError& e) {
        err << "error: data directory " << options.data_dir.string() << ": " << e.what() << "\n";
        return kExitUsage;
    }
    if (options.seed && *options.seed != service->seed())
        err << "note: existing event log keeps seed " << service->seed() << "; --seed ignored\n";

    HttpServer server(*service, options.assets);
    int port = 0;
    try {
        port = server.bind(options.host, options.port);
    } catch (const LabError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    // Worker threads inherit the blocked mask; this thread collects the signal.
    sigset_t previous;
    pthread_sigmask(SIG_BLOCK, &stop_signals, &previous);
    std::atomic<bool> finished{false};
    std::thread listener([&] {
        server.listen();
        finished = true;
    });

    out << "vmlab serving http://" << options.host << ":" << port << "/ (data " << options.data_dir.string()
        << ", seed " << service->seed() << ")" << std::endl;

    const timespec poll{0, 200'000'000};
    while (!finished) {
        if (sigtimedwait(&stop_signals, nullptr, &poll) > 0) break;
    }
    server.stop();
    listener.join();
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    out << "stopped after " << service->event_count() << " events" << std::endl;
    return kExitOk;
}

}  // namespace vmlab::cli
