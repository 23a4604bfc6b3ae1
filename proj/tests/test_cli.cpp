#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "gqg/runner.hpp"

using namespace gqg;

namespace {

std::string temp_dir(const char* tag) {
    auto p = std::filesystem::temp_directory_path() /
             (std::string("gqg-test-") + tag + "-" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p.string();
}

}  // namespace

TEST_CASE("job parsing fills defaults") {
    JobSpec job = parse_job_text(R"({
        "command": "roots",
        "field": {"rational_function": true},
        "q": [["t^2", "t^-1"], ["t^-1", "t^2"]]
    })");
    CHECK(job.command == "roots");
    CHECK(job.box == 4);
    CHECK(job.cap_roots == 1024);
    CHECK(job.cap_height == 12);
    CHECK(job.chi.rank == 2);
    CHECK(job.qlit[0][1] == "t^-1");
    CHECK_FALSE(job.eta.has_value());
}

TEST_CASE("job validation failures name the offending field") {
    auto message_of = [](const std::string& text) {
        try {
            parse_job_text(text);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };
    CHECK(message_of(R"({"command": "frobnicate", "preset": "A1-generic"})")
              .find("command") != std::string::npos);
    CHECK(message_of(R"({"command": "roots", "field": {"cyclotomic": 3},
                          "q": [["z", "t"], ["z", "z"]]})")
              .find("q[0][1]") != std::string::npos);
    CHECK(message_of(R"({"command": "roots", "field": {"cyclotomic": 3}})")
              .find("'q'") != std::string::npos);
    CHECK(message_of(R"({"command": "roots"})").find("preset") != std::string::npos);
    CHECK(message_of(R"({"command": "roots", "preset": "A1-generic",
                          "caps": {"roots": 0}})")
              .find("positive") != std::string::npos);
    CHECK(message_of(R"({"command": "roots", "preset": "A2-generic",
                          "eta": ["t"]})")
              .find("eta") != std::string::npos);
    CHECK(message_of(R"({"command": "roots", "preset": "A1-generic",
                          "field": {"rational_function": true}})")
              .find("conflicts") != std::string::npos);
    CHECK(message_of(R"({"command": "roots", "preset": "A0-tiny"})").find("A0-tiny") !=
          std::string::npos);
}

TEST_CASE("equivalent jobs in both syntaxes give byte-identical reports") {
    JobSpec a = parse_job_text(R"({
        "command": "pbw-dims",
        "field": {"cyclotomic": 3},
        "q": [["z"]],
        "caps": {"roots": 64, "height": 6}
    })");
    JobSpec b = parse_job_text(
        "# graded dimension table\n"
        "command = \"pbw-dims\"\n"
        "q = [[\"z\"]]\n"
        "\n"
        "[caps]\n"
        "roots = 64\n"
        "height = 6\n"
        "\n"
        "[field]\n"
        "cyclotomic = 3\n");
    RunResult ra = run(a), rb = run(b);
    CHECK(ra.exit_code == 0);
    CHECK(report_dump(ra.report) == report_dump(rb.report));
}

TEST_CASE("root listing for the two-generator preset") {
    JobSpec job = parse_job_text(R"({"command": "roots", "preset": "A2-generic"})");
    RunResult r = run(job);
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("status") == "ok");
    CHECK(r.report.at("results").at("roots").size() == 3);
    CHECK(r.report.at("results").at("count") == 3);
    // the dump is valid JSON and round-trips
    Json back = Json::parse(report_dump(r.report));
    CHECK(back == r.report);
}

TEST_CASE("a cap stops an infinite root system with a diagnosis") {
    JobSpec job = parse_job_text(R"({
        "command": "roots",
        "field": {"rational_function": true},
        "q": [["t^2", "t^-2"], ["t^-2", "t^2"]],
        "caps": {"roots": 20}
    })");
    RunResult r = run(job);
    CHECK(r.exit_code == 1);
    CHECK(r.report.at("status") == "error");
    CHECK(r.report.at("error").at("kind") == "CapExceeded");
    CHECK(r.report.at("error").contains("diagnosis"));
}

TEST_CASE("commands that need one generator reject larger matrices") {
    JobSpec job = parse_job_text(R"({"command": "center-rank1", "preset": "A2-zeta3"})");
    RunResult r = run(job);
    CHECK(r.exit_code == 2);
    CHECK(r.report.at("error").at("kind") == "RankMismatch");
}

TEST_CASE("cached and fresh runs produce byte-identical reports") {
    std::string dir = temp_dir("cache");
    JobSpec job = parse_job_text(R"({"command": "roots", "preset": "B2-generic"})");
    job.cache = dir;
    std::string first = report_dump(run(job).report);
    std::string second = report_dump(run(job).report);
    CHECK(first == second);

    // a corrupted entry is ignored and rewritten
    for (const auto& ent : std::filesystem::directory_iterator(dir)) {
        std::ofstream out(ent.path());
        out << "{ not json";
    }
    CHECK(report_dump(run(job).report) == first);

    // an unwritable cache location only costs the caching
    job.cache = "/proc/nope";
    CHECK(report_dump(run(job).report) == first);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cache keys separate kinds and degrees") {
    FieldSpec f = FieldSpec::cyclotomic(3);
    Bicharacter chi{f, 1, {{Scalar::gen(f)}}};
    Bicharacter chi2{f, 1, {{Scalar::gen_pow(f, 2)}}};
    CHECK(cache_key("roots", chi) == cache_key("roots", chi));
    CHECK(cache_key("roots", chi) != cache_key("groupoid", chi));
    CHECK(cache_key("roots", chi) != cache_key("roots", chi2));
    CHECK(cache_key("pbw-dims", chi, 5) != cache_key("pbw-dims", chi, 6));

    std::string dir = temp_dir("kv");
    CHECK_FALSE(cache_get(dir, "0123456789abcdef").has_value());
    Json payload;
    payload["v"] = 7;
    CHECK(cache_put(dir, "0123456789abcdef", payload));
    auto got = cache_get(dir, "0123456789abcdef");
    REQUIRE(got.has_value());
    CHECK(got->at("v") == 7);
    std::filesystem::remove_all(dir);
}

TEST_CASE("every preset carries a parseable matrix") {
    for (const auto& [name, def] : preset_table()) {
        Bicharacter chi = preset_chi(def);
        CHECK(chi.rank == static_cast<int>(def.q.size()));
        CHECK_FALSE(chi.qij(0, 0).is_zero());
    }
    CHECK_THROWS_AS(find_preset("nonesuch"), ValidationError);
}

TEST_CASE("seeded window solving through the runner") {
    JobSpec job = parse_job_text(R"({
        "command": "hc-solve",
        "preset": "A1-generic",
        "window": {"radius": 2, "seeds": [[[1], [1]]]}
    })");
    RunResult r = run(job);
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("results").at("window_pairs") == 3);
    CHECK(r.report.at("results").at("dim") == 2);
}

TEST_CASE("box solving and lifting through the runner") {
    JobSpec solve = parse_job_text(R"({
        "command": "hc-solve", "preset": "A1-generic", "window": {"box": 1}
    })");
    RunResult rs = run(solve);
    REQUIRE(rs.exit_code == 0);
    CHECK(rs.report.at("results").at("dim") == 6);

    JobSpec lift = parse_job_text(R"({
        "command": "center-lift",
        "preset": "A1-zeta3",
        "eta": ["z"],
        "window": {"box": 2}
    })");
    RunResult rl = run(lift);
    REQUIRE(rl.exit_code == 0);
    CHECK(rl.report.at("results").at("dim") == 16);
    CHECK(rl.report.at("results").at("lifted") == 16);
}
