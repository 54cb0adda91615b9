// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// The service criterion drives the real `vmlab serve` process and kills it
// with SIGKILL to exercise crash recovery.

#include "vmlab/exercise.hpp"
#include "vmlab/generator.hpp"
#include "vmlab/instruments.hpp"
#include "vmlab/json_codec.hpp"
#include "vmlab/lab_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#ifndef VMLAB_BIN
#error "VMLAB_BIN must name the vmlab executable"
#endif

using namespace vmlab;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

Outcome exhaustive_roundtrip() {
    Outcome o;
    std::int64_t checked = 0;
    const auto t0 = Clock::now();
    for (auto kind : kAllKinds) {
        const InstrumentSpec spec = default_spec(kind);
        for (std::int64_t t = 0; t <= spec.range_max_ticks; ++t) {
            ++checked;
            o.require(compose(spec, decompose(spec, TickPosition{t})) == TickPosition{t},
                      std::string(slug(kind)) + " mismatch at " + std::to_string(t));
        }
    }
    const double elapsed = seconds_since(t0);
    o.require(checked == 1501 + 2501 + 1001 + 1801, "wrong position count " + std::to_string(checked));
    o.require(elapsed < 1.0, "took " + fmt_seconds(elapsed));
    if (o.pass) o.detail = std::to_string(checked) + " positions in " + fmt_seconds(elapsed);
    return o;
}

Outcome vernier_oracle() {
    Outcome o;
    std::int64_t checked = 0;
    for (auto kind : {InstrumentKind::VernierCaliper, InstrumentKind::VernierProtractor}) {
        const InstrumentSpec spec = default_spec(kind);
        const ScaleGeometry geo = geometry_template(spec);
        const Rational gap = spec.main_division() / Rational(*spec.vernier_divisions);
        for (std::int64_t t = 0; t <= spec.range_max_ticks; ++t) {
            ++checked;
            const TickPosition pos{t};
            const std::string where = std::string(slug(kind)) + " " + std::to_string(t);
            o.require(coincidence_index(spec, pos) == best_aligned_mark(geo, pos), "index differs at " + where);
            auto d = vernier_alignment_distances(geo, pos);
            std::sort(d.begin(), d.end());
            o.require(d.front() == Rational(0), "no exact coincidence at " + where);
            const auto second = std::upper_bound(d.begin(), d.end(), Rational(0));
            o.require(second != d.end() && *second == gap, "second-best distance is not main/N at " + where);
        }
        o.require(coincidence_index(spec, TickPosition{spec.main_division_ticks * 3}) == 0,
                  "tie at a whole division not resolved to index 0");
    }
    if (o.pass) o.detail = std::to_string(checked) + " positions, gap = main division / N everywhere";
    return o;
}

Outcome reference_readings() {
    Outcome o;
    const std::string dial = format_value(default_spec(InstrumentKind::DialIndicator), TickPosition{35});
    const std::string prot = format_value(default_spec(InstrumentKind::VernierProtractor), TickPosition{160});
    o.require(dial == "350", "dial 35 ticks shows '" + dial + "'");
    o.require(prot == "16.0", "protractor 160 ticks shows '" + prot + "'");
    o.require(unit_symbol(default_spec(InstrumentKind::DialIndicator).display_unit) == "μm", "dial unit");
    o.require(unit_symbol(default_spec(InstrumentKind::VernierProtractor).display_unit) == "°", "protractor unit");
    if (o.pass) o.detail = "dial \"" + dial + "\" μm, protractor \"" + prot + "\" °";
    return o;
}

Outcome feedback_protocol() {
    Outcome o;
    std::int64_t targets = 0;
    for (auto kind : kAllKinds) {
        const InstrumentSpec spec = default_spec(kind);
        for (std::int64_t t = 1; t <= spec.range_max_ticks; ++t) {
            ++targets;
            const TickPosition target{t};
            Exercise ex;
            ex.id = "e";
            ex.kind = kind;
            ex.target = target;
            const auto right = grade(spec, ex, format_value(spec, target));
            o.require(right.verdict == Verdict::Correct && right.message == "Well done",
                      "true value not accepted at " + std::string(slug(kind)) + " " + std::to_string(t));
            for (std::int64_t n : {t - 1, t + 1}) {
                if (!in_range(spec, TickPosition{n})) continue;
                Exercise near = ex;
                near.state = ExerciseState::Open;
                const auto wrong = grade(spec, near, format_value(spec, TickPosition{n}));
                o.require(wrong.verdict == Verdict::Incorrect && wrong.message == "Sorry, wrong answer!",
                          "neighbour " + std::to_string(n) + " accepted for " + std::string(slug(kind)) + " " +
                              std::to_string(t));
            }
        }
    }
    if (o.pass) o.detail = std::to_string(targets) + " targets, all ±1 neighbours rejected";
    return o;
}

std::vector<std::int64_t> stream(InstrumentKind kind, std::uint64_t seed, int count) {
    Generator gen(seed);
    std::optional<TickPosition> previous;
    std::vector<std::int64_t> out;
    for (int i = 0; i < count; ++i) {
        const Exercise ex = next_exercise(gen, default_spec(kind), previous, "x");
        previous = ex.target;
        out.push_back(ex.target.ticks);
    }
    return out;
}

// Runs a command, returns {exit status, stdout}.
std::pair<int, std::string> capture(const std::string& command) {
    std::string output;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return {-1, ""};
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("vmlab-acceptance-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

Outcome generator_determinism(const fs::path& scratch) {
    Outcome o;
    // Frozen from the independent Python oracle (tests/oracles/generator_oracle.py).
    struct Golden {
        InstrumentKind kind;
        std::int64_t sum, last;
    };
    for (const Golden& g : {Golden{InstrumentKind::VernierCaliper, 764732, 1427},
                            Golden{InstrumentKind::Micrometer, 1237270, 2075},
                            Golden{InstrumentKind::DialIndicator, 502819, 869},
                            Golden{InstrumentKind::VernierProtractor, 952138, 1775}}) {
        const auto a = stream(g.kind, 42, 1000);
        const auto b = stream(g.kind, 42, 1000);
        o.require(a == b, "two runs differ for " + std::string(slug(g.kind)));
        std::int64_t sum = 0;
        for (auto v : a) sum += v;
        o.require(sum == g.sum && a.back() == g.last, "oracle golden differs for " + std::string(slug(g.kind)));
    }

    // CLI worksheet vs service: the service issues the same 1000 targets.
    const auto [code, csv] = capture(std::string(VMLAB_BIN) + " gen --instrument caliper --count 1000 --seed 42");
    o.require(code == 0, "vmlab gen failed");
    std::vector<std::string> answers;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) answers.push_back(line.substr(line.rfind(',') + 1));
    o.require(answers.size() == 1000, "gen printed " + std::to_string(answers.size()) + " rows");
    {
        ServiceOptions so;
        so.data_dir = scratch / "gen-vs-service";
        so.seed = 42;
        LabService service(so);
        const std::string sid = service.create_session().at("session_id");
        int correct = 0;
        for (const auto& answer : answers) {
            const std::string eid = service.issue_exercise(sid, "caliper").at("exercise_id");
            correct += service.submit_answer(sid, eid, answer).at("message") == "Well done";
        }
        o.require(correct == 1000, "service agreed with CLI on " + std::to_string(correct) + "/1000");
    }

    Generator g(2024);
    std::array<int, 10> counts{};
    for (int i = 0; i < 10000; ++i) ++counts[static_cast<std::size_t>(uniform_ticks(g, 0, 9))];
    double chi = 0;
    for (int c : counts) chi += (c - 1000.0) * (c - 1000.0) / 1000.0;
    o.require(chi < 33.0, "chi-square " + std::to_string(chi));
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "streams identical, CLI = service 1000/1000, chi-square %.2f", chi);
        o.detail = buf;
    }
    return o;
}

// `vmlab serve` as a child process on an ephemeral port.
class ServerProcess {
  public:
    ServerProcess(const fs::path& data_dir, std::optional<std::uint64_t> seed) {
        int fds[2];
        if (::pipe(fds) != 0) return;
        pid_ = ::fork();
        if (pid_ == 0) {
            ::dup2(fds[1], STDOUT_FILENO);
            ::close(fds[0]);
            ::close(fds[1]);
            const std::string dir = data_dir.string();
            const std::string seed_text = seed ? std::to_string(*seed) : "";
            if (seed)
                ::execl(VMLAB_BIN, "vmlab", "serve", "--port", "0", "--data-dir", dir.c_str(), "--seed",
                        seed_text.c_str(), nullptr);
            else
                ::execl(VMLAB_BIN, "vmlab", "serve", "--port", "0", "--data-dir", dir.c_str(), nullptr);
            ::_exit(127);
        }
        ::close(fds[1]);
        std::string banner;
        char c = 0;
        while (::read(fds[0], &c, 1) == 1 && c != '\n') banner += c;
        ::close(fds[0]);
        const auto colon = banner.find("127.0.0.1:");
        if (colon != std::string::npos) port_ = std::atoi(banner.c_str() + colon + 10);
    }
    ~ServerProcess() { kill(); }

    int port() const { return port_; }

    void kill() {
        if (pid_ > 0) {
            ::kill(pid_, SIGKILL);
            ::waitpid(pid_, nullptr, 0);
            pid_ = -1;
        }
    }

  private:
    pid_t pid_ = -1;
    int port_ = 0;
};

Outcome service_contract(const fs::path& scratch) {
    Outcome o;
    const fs::path data = scratch / "service";
    constexpr std::uint64_t kSeed = 31337;
    const InstrumentSpec caliper = default_spec(InstrumentKind::VernierCaliper);

    // Seeded test oracle for the first two caliper targets of a fresh server.
    Generator oracle(kSeed);
    const TickPosition first = next_exercise(oracle, caliper, std::nullopt, "x").target;
    const TickPosition second = next_exercise(oracle, caliper, first, "x").target;

    std::string sid, answered, open, stats_before;
    std::vector<std::string> responses;
    {
        ServerProcess server(data, kSeed);
        o.require(server.port() > 0, "server did not start");
        if (!o.pass) return o;
        httplib::Client c("127.0.0.1", server.port());

        auto created = c.Post("/api/v1/sessions");
        o.require(created && created->status == 201, "create session");
        if (!o.pass) return o;
        sid = json::parse(created->body).at("session_id");

        auto issued = c.Post("/api/v1/sessions/" + sid + "/exercises", R"({"kind":"caliper"})", "application/json");
        o.require(issued && issued->status == 201, "issue exercise");
        if (!o.pass) return o;
        answered = json::parse(issued->body).at("exercise_id");
        responses.push_back(issued->body);
        responses.push_back(c.Get("/api/v1/sessions/" + sid + "/exercises/" + answered + "/transform")->body);
        responses.push_back(c.Get("/api/v1/sessions/" + sid + "/stats")->body);
        for (const auto& body : responses)
            o.require(body.find(format_value(caliper, first)) == std::string::npos,
                      "open exercise response reveals the target: " + body);
        responses.clear();

        auto verdict = c.Post("/api/v1/sessions/" + sid + "/exercises/" + answered + "/answer",
                              json{{"text", format_value(caliper, first)}}.dump(), "application/json");
        o.require(verdict && json::parse(verdict->body) == json{{"verdict", "correct"}, {"message", "Well done"}},
                  "correct answer not accepted");

        auto stats = c.Get("/api/v1/sessions/" + sid + "/stats");
        const json s = json::parse(stats->body);
        o.require(s.at("overall").at("attempts") == 1 && s.at("overall").at("correct") == 1, "stats not 1/1");
        stats_before = stats->body;

        auto issued2 = c.Post("/api/v1/sessions/" + sid + "/exercises", R"({"kind":"caliper"})", "application/json");
        open = json::parse(issued2->body).at("exercise_id");
        responses.push_back(issued2->body);
        responses.push_back(c.Get("/api/v1/sessions/" + sid + "/exercises/" + open + "/transform")->body);
        for (const auto& body : responses)
            o.require(body.find(format_value(caliper, second)) == std::string::npos,
                      "open exercise response reveals the target: " + body);
        server.kill();
    }

    ServerProcess restarted(data, std::nullopt);
    o.require(restarted.port() > 0, "server did not restart");
    if (!o.pass) return o;
    httplib::Client c("127.0.0.1", restarted.port());
    auto stats = c.Get("/api/v1/sessions/" + sid + "/stats");
    o.require(stats && stats->body == stats_before, "stats differ after restart");
    auto dup = c.Post("/api/v1/sessions/" + sid + "/exercises/" + answered + "/answer",
                      json{{"text", format_value(caliper, first)}}.dump(), "application/json");
    o.require(dup && dup->status == 409 && json::parse(dup->body).at("code") == "already_answered",
              "duplicate submit not rejected with 409");
    auto resumed = c.Post("/api/v1/sessions/" + sid + "/exercises/" + open + "/answer",
                          json{{"text", format_value(caliper, second)}}.dump(), "application/json");
    o.require(resumed && json::parse(resumed->body).at("message") == "Well done",
              "open exercise lost across restart");
    if (o.pass) o.detail = "flow 1/1, SIGKILL + restart replayed identical stats, duplicate 409";
    return o;
}

Outcome cli_checks() {
    Outcome o;
    const std::string bin = VMLAB_BIN;
    const auto t0 = Clock::now();
    const auto [code, out] = capture(bin + " selftest");
    const double elapsed = seconds_since(t0);
    o.require(code == 0, "selftest exit " + std::to_string(code) + ": " + out);
    o.require(elapsed < 1.0, "selftest took " + fmt_seconds(elapsed));

    const std::string gen = bin + " gen --instrument micrometer --count 1000 --seed 9";
    const auto g1 = capture(gen), g2 = capture(gen);
    o.require(g1.first == 0 && g1 == g2 && !g1.second.empty(), "gen output not reproducible");

    for (auto kind : kAllKinds) {
        for (const char* format : {"json", "svg"}) {
            const std::string render = bin + " render --instrument " + std::string(slug(kind)) +
                                       " --ticks 160 --show-reading --format " + format;
            const auto r1 = capture(render), r2 = capture(render);
            o.require(r1.first == 0 && r1 == r2 && !r1.second.empty(),
                      std::string("render not stable for ") + std::string(slug(kind)) + " " + format);
        }
    }
    if (o.pass) o.detail = "selftest exit 0 in " + fmt_seconds(elapsed) + ", gen and render byte-identical";
    return o;
}

}  // namespace

int main() {
    std::signal(SIGPIPE, SIG_IGN);
    TempDir scratch;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exhaustive round-trip", exhaustive_roundtrip},
        {"vernier oracle equivalence", vernier_oracle},
        {"reference readings", reference_readings},
        {"feedback protocol", feedback_protocol},
        {"generator determinism and fairness", [&] { return generator_determinism(scratch.path); }},
        {"service contract and durability", [&] { return service_contract(scratch.path); }},
        {"cli selftest, gen and render", cli_checks},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
