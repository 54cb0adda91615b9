#include "vmlab/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>

namespace vmlab::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Virtual measurement lab: instrument reading exercises, worksheets and the lab server"};
    app.require_subcommand(1);

    GenOptions gen;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Print a reproducible worksheet as CSV");
    gen_cmd->add_option("--instrument", gen.instrument, "caliper, micrometer, dial or protractor")->required();
    gen_cmd->add_option("--count", gen.count, "Number of exercises")->required();
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->required();
    gen_cmd->add_option("--out", gen_out, "Write to a file instead of stdout");

    GradeOptions grade;
    auto* grade_cmd = app.add_subcommand("grade", "Grade a CSV of answers (kind,target_ticks,answer)");
    grade_cmd->add_option("answers", grade.answers, "Answers CSV")->required();
    grade_cmd->add_option("--tolerance", grade.tolerance_ticks, "Accepted error in ticks")
        ->check(CLI::NonNegativeNumber);

    RenderOptions render;
    auto* render_cmd = app.add_subcommand("render", "Draw an instrument at a position");
    render_cmd->add_option("--instrument", render.instrument, "caliper, micrometer, dial or protractor")
        ->required();
    render_cmd->add_option("--ticks", render.ticks, "Position in least counts")->required();
    render_cmd->add_flag("--show-reading", render.show_reading, "Highlight the coinciding mark, print the reading");
    render_cmd->add_option("--format", render.format, "json (template and transform) or svg")
        ->check(CLI::IsMember({"json", "svg"}));

    std::string export_dir;
    auto* export_cmd = app.add_subcommand("export", "Write the offline site bundle");
    export_cmd->add_option("--out", export_dir, "Target directory")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "Exhaustive scale consistency checks");

    ServeOptions serve;
    std::string data_dir = "vmlab-data";
    std::uint64_t serve_seed = 0;
    std::string assets;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP lab server");
    serve_cmd->add_option("--host", serve.host, "Listen address")->capture_default_str();
    serve_cmd->add_option("--port", serve.port, "Listen port, 0 for any")->capture_default_str()
        ->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--data-dir", data_dir, "Event log directory")
        ->envname("VMLAB_DATA_DIR")
        ->capture_default_str();
    auto* seed_opt = serve_cmd->add_option("--seed", serve_seed, "Generator seed for a fresh event log");
    serve_cmd->add_option("--assets", assets, "Serve a built web UI from this directory under /assets");
    serve_cmd->add_option("--tolerance", serve.tolerance_ticks, "Accepted error in ticks")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*gen_cmd) {
        if (!gen_out.empty()) gen.out = gen_out;
        return cmd_gen(gen, out, err);
    }
    if (*grade_cmd) return cmd_grade(grade, out, err);
    if (*render_cmd) return cmd_render(render, out, err);
    if (*export_cmd) return cmd_export(export_dir, out, err);
    if (*selftest_cmd) return cmd_selftest(out, err);
    if (*serve_cmd) {
        serve.data_dir = data_dir;
        if (*seed_opt) serve.seed = serve_seed;
        if (!assets.empty()) serve.assets = assets;
        return cmd_serve(serve, out, err);
    }
    return kExitUsage;
}

}  // namespace vmlab::cli
