#include "doctest.h"

#include "temp_dir.hpp"
#include "vmlab/lab_service.hpp"

#include <fstream>
#include <sstream>

using namespace vmlab;

namespace {

constexpr std::uint64_t kSeed = 20240301;

ServiceOptions options_for(const TempDir& dir, std::uint64_t seed = kSeed) {
    ServiceOptions o;
    o.data_dir = dir.path();
    o.seed = seed;
    o.clock = [] { return Timestamp{std::chrono::milliseconds{1709294400000}}; };
    return o;
}

// Targets the server generator hands out, in issue order, for one session.
class TargetOracle {
  public:
    explicit TargetOracle(std::uint64_t seed) : gen_(seed) {}
    TickPosition next(InstrumentKind kind) {
        const auto ex = next_exercise(gen_, default_spec(kind), previous_[kind], "x");
        previous_[kind] = ex.target;
        return ex.target;
    }

  private:
    Generator gen_;
    std::map<InstrumentKind, std::optional<TickPosition>> previous_;
};

std::string display(InstrumentKind kind, TickPosition pos) { return format_value(default_spec(kind), pos); }

ErrorCode error_of(auto&& call) {
    try {
        call();
    } catch (const LabError& e) {
        return e.code();
    }
    FAIL("expected LabError");
    return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("correct answer flow and stats") {
    TempDir dir;
    LabService service(options_for(dir));
    TargetOracle oracle(kSeed);

    const std::string sid = service.create_session().at("session_id");
    CHECK(sid.size() == 22);
    const json issued = service.issue_exercise(sid, "caliper");
    CHECK(issued.size() == 2);
    CHECK(issued.at("kind") == "caliper");
    const std::string eid = issued.at("exercise_id");

    const auto target = oracle.next(InstrumentKind::VernierCaliper);
    const json verdict = service.submit_answer(sid, eid, display(InstrumentKind::VernierCaliper, target));
    CHECK(verdict == json{{"verdict", "correct"}, {"message", "Well done"}});

    const json stats = service.get_stats(sid);
    CHECK(stats.at("overall").at("attempts") == 1);
    CHECK(stats.at("overall").at("correct") == 1);
    CHECK(stats.at("overall").at("accuracy") == 1.0);
    CHECK(stats.at("per_kind").at("caliper").at("correct") == 1);
    CHECK(stats.at("per_kind").at("dial").at("attempts") == 0);

    CHECK(error_of([&] { service.submit_answer(sid, eid, "1.0"); }) == ErrorCode::AlreadyAnswered);
    CHECK(service.get_stats(sid).at("overall").at("attempts") == 1);
}

TEST_CASE("wrong and malformed answers") {
    TempDir dir;
    LabService service(options_for(dir));
    TargetOracle oracle(kSeed);
    const std::string sid = service.create_session().at("session_id");
    const std::string eid = service.issue_exercise(sid, "micrometer").at("exercise_id");
    const auto target = oracle.next(InstrumentKind::Micrometer);

    CHECK(error_of([&] { service.submit_answer(sid, eid, "12,5"); }) == ErrorCode::MalformedInput);
    CHECK(error_of([&] { service.submit_answer(sid, eid, ""); }) == ErrorCode::MalformedInput);
    CHECK(service.get_stats(sid).at("overall").at("attempts") == 0);

    const TickPosition wrong{target.ticks == 1 ? 2 : target.ticks - 1};
    const json verdict = service.submit_answer(sid, eid, display(InstrumentKind::Micrometer, wrong));
    CHECK(verdict == json{{"verdict", "incorrect"}, {"message", "Sorry, wrong answer!"}});
    const json stats = service.get_stats(sid);
    CHECK(stats.at("overall").at("attempts") == 1);
    CHECK(stats.at("overall").at("correct") == 0);
}

TEST_CASE("lookups that fail are not_found") {
    TempDir dir;
    LabService service(options_for(dir));
    const std::string a = service.create_session().at("session_id");
    const std::string b = service.create_session().at("session_id");
    const std::string eid = service.issue_exercise(a, "dial").at("exercise_id");

    CHECK(error_of([&] { service.issue_exercise("nosuchsession", "dial"); }) == ErrorCode::NotFound);
    CHECK(error_of([&] { service.issue_exercise(a, "ruler"); }) == ErrorCode::NotFound);
    CHECK(error_of([&] { service.submit_answer(a, "nosuchexercise", "1"); }) == ErrorCode::NotFound);
    CHECK(error_of([&] { service.submit_answer(b, eid, "1"); }) == ErrorCode::NotFound);
    CHECK(error_of([&] { service.exercise_transform(b, eid); }) == ErrorCode::NotFound);
    CHECK(error_of([&] { service.get_stats("nosuchsession"); }) == ErrorCode::NotFound);
    CHECK(error_of([&] { service.template_body("ruler"); }) == ErrorCode::NotFound);
    CHECK(error_of([&] { service.get_reading("caliper", 1501); }) == ErrorCode::OutOfRange);
    CHECK(error_of([&] { service.get_reading("caliper", -1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("no response before grading reveals the target") {
    TempDir dir;
    LabService service(options_for(dir));
    TargetOracle oracle(kSeed);
    const std::string sid = service.create_session().at("session_id");
    for (int round = 0; round < 25; ++round) {
        for (auto kind : kAllKinds) {
            const json issued = service.issue_exercise(sid, slug(kind));
            const std::string eid = issued.at("exercise_id");
            const std::string shown = display(kind, oracle.next(kind));
            CAPTURE(shown);
            CHECK(issued.dump().find(shown) == std::string::npos);
            CHECK(service.get_stats(sid).dump().find(shown) == std::string::npos);
            CHECK(service.submit_answer(sid, eid, "0").dump().find(shown) == std::string::npos);
        }
    }
}

TEST_CASE("restart replays sessions, answers and the generator stream") {
    TempDir interrupted, straight;

    auto script = [](LabService& s, const std::string& sid, int from, int to) {
        std::vector<json> transforms;
        for (int i = from; i < to; ++i) {
            const auto kind = kAllKinds[static_cast<std::size_t>(i) % kAllKinds.size()];
            const std::string eid = s.issue_exercise(sid, slug(kind)).at("exercise_id");
            json t = s.exercise_transform(sid, eid);
            t.erase("exercise_id");
            transforms.push_back(t);
            if (i % 3 != 0) s.submit_answer(sid, eid, "1.5");
        }
        return transforms;
    };

    std::vector<json> expected, observed;
    json stats_before;
    std::string sid_b;
    {
        LabService b(options_for(straight));
        sid_b = b.create_session().at("session_id");
        expected = script(b, sid_b, 0, 20);
    }
    std::string sid_a;
    {
        LabService a(options_for(interrupted));
        sid_a = a.create_session().at("session_id");
        observed = script(a, sid_a, 0, 10);
        stats_before = a.get_stats(sid_a);
    }
    {
        // A different seed on restart is ignored: the log already has one.
        LabService a(options_for(interrupted, 999));
        CHECK(a.seed() == kSeed);
        CHECK(a.get_stats(sid_a) == stats_before);
        auto rest = script(a, sid_a, 10, 20);
        observed.insert(observed.end(), rest.begin(), rest.end());
        json final_a = a.get_stats(sid_a);
        LabService b(options_for(straight));
        json final_b = b.get_stats(sid_b);
        final_a.erase("session_id");
        final_b.erase("session_id");
        CHECK(final_a == final_b);
    }
    CHECK(observed == expected);
}

TEST_CASE("open exercises survive a restart and answered ones stay answered") {
    TempDir dir;
    TargetOracle oracle(kSeed);
    std::string sid, open_id, closed_id;
    TickPosition open_target{};
    {
        LabService s(options_for(dir));
        sid = s.create_session().at("session_id");
        closed_id = s.issue_exercise(sid, "protractor").at("exercise_id");
        oracle.next(InstrumentKind::VernierProtractor);
        s.submit_answer(sid, closed_id, "0");
        open_id = s.issue_exercise(sid, "protractor").at("exercise_id");
        open_target = oracle.next(InstrumentKind::VernierProtractor);
    }
    LabService s(options_for(dir));
    CHECK(error_of([&] { s.submit_answer(sid, closed_id, "0"); }) == ErrorCode::AlreadyAnswered);
    CHECK(s.submit_answer(sid, open_id, display(InstrumentKind::VernierProtractor, open_target))
              .at("message") == "Well done");
}

TEST_CASE("catalog lists the four instruments in menu order") {
    TempDir dir;
    LabService service(options_for(dir));
    const json catalog = service.list_instruments().at("instruments");
    REQUIRE(catalog.size() == 4);
    CHECK(catalog[0].at("kind") == "caliper");
    CHECK(catalog[1].at("kind") == "micrometer");
    CHECK(catalog[2].at("kind") == "dial");
    CHECK(catalog[3].at("kind") == "protractor");
    CHECK(catalog[0].at("least_count") == "0.1 mm");
    CHECK(catalog[2].at("least_count") == "10 μm");
}

TEST_CASE("reference readings through the reading endpoint") {
    TempDir dir;
    LabService service(options_for(dir));
    CHECK(service.get_reading("dial", 35).at("display_value") == "350");
    CHECK(service.get_reading("protractor", 160).at("display_value") == "16.0");
}

TEST_CASE("the log opens with the seed and records every change") {
    TempDir dir;
    {
        LabService service(options_for(dir));
        const std::string sid = service.create_session().at("session_id");
        const std::string eid = service.issue_exercise(sid, "caliper").at("exercise_id");
        service.submit_answer(sid, eid, "0");
        CHECK(service.event_count() == 4);
    }
    EventLog log(dir.path());
    const auto events = log.replay();
    REQUIRE(events.size() == 4);
    CHECK(events[0].kind == EventKind::ServerSeeded);
    CHECK(events[0].payload.at("seed") == kSeed);
    CHECK(events[1].kind == EventKind::SessionCreated);
    CHECK(events[2].kind == EventKind::ExerciseIssued);
    CHECK(events[2].payload.contains("target"));
    CHECK(events[3].kind == EventKind::AttemptGraded);
    CHECK(events[3].payload.at("answer_raw") == "0");
}
