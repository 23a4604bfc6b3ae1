#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gqg/runner.hpp"

namespace {

int emit(const gqg::RunResult& r, const std::string& out_path) {
    std::string text = gqg::report_dump(r.report);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write report to '" << out_path << "'\n";
            return 2;
        }
        out << text;
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for algebras defined by a bicharacter matrix"};
    app.set_help_all_flag("--help-all", "expanded help for every subcommand");

    std::string job_path, out_path, cache_flag, preset;
    long cap_roots = 0, cap_height = 0, box = 0;
    app.add_option("--job", job_path, "job file, JSON or TOML; '-' reads standard input");
    app.add_option("--out", out_path, "write the report here instead of standard output");
    app.add_option("--cache", cache_flag, "cache directory (the GQG_CACHE variable overrides)");
    app.add_option("--cap-roots", cap_roots, "stop root enumeration beyond this many roots");
    app.add_option("--cap-height", cap_height, "height bound for graded tables");
    app.add_option("--box", box, "box radius for windowed solves and center searches");
    app.add_option("--preset", preset, "named q-matrix preset (see the README)");

    static const std::pair<const char*, const char*> kCommands[] = {
        {"roots", "enumerate the positive roots and check the reflection involutions"},
        {"groupoid", "explore the reflection groupoid of q-matrices"},
        {"pbw-dims", "graded dimension table of the negative part"},
        {"shapovalov", "factor the degree-beta transfer determinant exactly"},
        {"singular", "construct and verify a singular vector family"},
        {"radical", "rank bound and radical generation on a hyperplane"},
        {"center-rank1", "classify the rank-one skew center in a box"},
        {"hc-solve", "solve the string equations over a window"},
        {"center-lift", "lift every string-equation solution to a skew-central element"},
        {"verify-all", "run the preset battery end to end"},
    };
    for (const auto& [name, help] : kCommands) app.add_subcommand(name, help)->fallthrough();
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    gqg::JobSpec job;
    try {
        if (!job_path.empty()) job = gqg::parse_job(job_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    // command-line settings win over job-file settings
    for (auto* sub : app.get_subcommands()) job.command = sub->get_name();
    if (app.count("--preset")) job.preset = preset;
    if (app.count("--cache")) job.cache = cache_flag;
    if (app.count("--out")) job.out = out_path;
    if (app.count("--cap-roots")) job.cap_roots = cap_roots;
    if (app.count("--cap-height")) job.cap_height = cap_height;
    if (app.count("--box")) job.box = box;

    if (job.command.empty()) {
        std::cerr << "error: no command: name a subcommand or supply a job file with one\n";
        return 2;
    }
    if (job.cap_roots <= 0 || job.cap_height <= 0 || job.box <= 0) {
        std::cerr << "error: caps and box radius must be positive\n";
        return 2;
    }

    gqg::RunResult r = gqg::run(job);
    return emit(r, job.out);
}
