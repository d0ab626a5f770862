#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("maxrank_cli_tests_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = work_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = work_dir() / ("stdout" + std::to_string(counter));
    fs::path err = work_dir() / ("stderr" + std::to_string(counter));
    ++counter;
    std::string cmd = std::string(MAXRANK_CLI_PATH) + " " + args + " > " +
                      out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

// The run_info block carries the only volatile values (wall clock); drop it
// before comparing two runs.
json without_run_info(const std::string& text) {
    json j = json::parse(text);
    j.erase("run_info");
    return j;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("usage and exit codes") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);            // subcommand required
    CHECK(run_cli("frobnicate").code == 2);  // unknown subcommand
    CHECK(run_cli("gen imm --d 2").code == 2); // --n missing
    CHECK(run_cli("gen imm --n 2 --d 2 --field 6").code == 2); // composite
    CHECK(run_cli("maxrank --in /nonexistent/path.txt").code == 2);
    CHECK(run_cli("verify no-such-claim").code == 2);
    CHECK(run_cli("gen q --n 6").code == 2); // 4 must divide n
}

TEST_CASE("polynomial text input end to end") {
    fs::path poly =
        write_file("running.txt", "y1*z1 + y1^2*z1 + y1*z1*z2 + z1\n");

    RunResult res = run_cli("maxrank --in " + poly.string() + " --field 2");
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    CHECK(j["value"] == 2);
    CHECK(j["exact"] == true);
    CHECK(j["substitutions_tried"] == 1);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 2);
    CHECK(j["field"] == 2);
    CHECK(j["witness"].contains("y1"));

    RunResult csv = run_cli("matrix --in " + poly.string() + " --field 2");
    REQUIRE(csv.code == 0);
    CHECK(csv.out ==
          "y_support,z_support,entry\n"
          "1,z1,1\n"
          "y1,z1,y1 + 1\n"
          "y1,z1*z2,1\n");

    RunResult mjson =
        run_cli("matrix --in " + poly.string() + " --field 2 --format json");
    REQUIRE(mjson.code == 0);
    json mj = json::parse(mjson.out);
    CHECK(mj["rows"] == 2);
    CHECK(mj["entries"].size() == 3);

    // A malformed polynomial is an input error.
    fs::path bad = write_file("bad.txt", "y1 ++ z1");
    CHECK(run_cli("maxrank --in " + bad.string() + " --field 2").code == 2);
}

TEST_CASE("generated wrapper files round through analysis") {
    fs::path f = work_dir() / "imm22.json";
    REQUIRE(run_cli("gen imm --n 2 --d 2 --field 2 --out " + f.string()).code == 0);
    json wrapper = json::parse(slurp(f));
    CHECK(wrapper["kind"] == "polynomial");
    CHECK(wrapper["field"] == 2);
    CHECK(wrapper.contains("partition"));
    CHECK(wrapper["meta"].contains("generator"));

    RunResult res = run_cli("maxrank --in " + f.string());
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    CHECK(j["value"] == 2);
    CHECK(j["exact"] == true);

    // A partition file overrides the embedded split: everything on one side
    // collapses the matrix to a single row.
    fs::path pi = write_file("lopsided.json",
                             R"({"Y": [], "Z": ["x1_1_1", "x1_1_2", "x1_2_1",
        "x1_2_2", "x2_1_1", "x2_1_2", "x2_2_1", "x2_2_2"]})");
    RunResult one = run_cli("maxrank --in " + f.string() + " --partition " +
                            pi.string());
    REQUIRE(one.code == 0);
    CHECK(json::parse(one.out)["value"] == 1);

    // Conflicting --field on a typed file is refused.
    CHECK(run_cli("maxrank --in " + f.string() + " --field 3").code == 2);
}

TEST_CASE("sampled mode and parallel scan agree with the exhaustive result") {
    fs::path poly =
        write_file("sampled.txt", "y1*z1 + y1^2*z1 + y1*z1*z2 + z1\n");
    std::string base = "maxrank --in " + poly.string() + " --field 2";

    RunResult ex = run_cli(base);
    RunResult par = run_cli(base + " --jobs 4");
    CHECK(ex.code == 0);
    REQUIRE(par.code == 0);
    // Value, exactness and witness are job-count independent; the number of
    // substitutions tried is not once a saturated chunk stops early.
    json je = json::parse(ex.out);
    json jp = json::parse(par.out);
    CHECK(je["value"] == jp["value"]);
    CHECK(je["exact"] == jp["exact"]);
    CHECK(je["witness"] == jp["witness"]);

    RunResult sam = run_cli(base + " --mode sampled --trials 8 --seed 3");
    REQUIRE(sam.code == 0);
    json j = json::parse(sam.out);
    CHECK(j["mode"] == "sampled");
    CHECK(j["value"] == 2);

    RunResult rep = run_cli(base + " --mode sampled --trials 8 --seed 3");
    CHECK(sam.out == rep.out);
}

TEST_CASE("resource budgets map to exit 3") {
    fs::path poly = write_file("budget.txt", "y1^2*z1 + y1*z1");
    CHECK(run_cli("maxrank --in " + poly.string() + " --field 101 --budget 50")
              .code == 3);

    fs::path wide = write_file("wide.txt", "y1*z1 + y2*z2 + y3*z3");
    CHECK(run_cli("maxrank --in " + wide.string() + " --field 2 --rank-limit 2")
              .code == 3);
}

TEST_CASE("circuit files feed analyze, decompose and maxrank") {
    fs::path formula = write_file("formula.json", R"({
        "kind": "formula", "field": 2,
        "root": {"op": "*",
                 "l": {"op": "+", "l": {"var": "y1"}, "r": {"var": "z1"}},
                 "r": {"op": "+", "l": {"var": "y2"}, "r": {"var": "z2"}}}
    })");
    RunResult an = run_cli("analyze --in " + formula.string());
    REQUIRE(an.code == 0);
    json aj = json::parse(an.out);
    CHECK(aj["kind"] == "formula");
    REQUIRE(aj["nodes"].is_array());
    CHECK(aj["nodes"].size() == 7);
    CHECK(aj.contains("product_sparse"));
    CHECK(aj.contains("weak_nodes"));

    CHECK(run_cli("maxrank --in " + formula.string()).code == 0);

    fs::path sps = work_dir() / "sps.json";
    REQUIRE(run_cli("gen random-sps --gates 2 --fanin 3 --field 101 --seed 5 "
                    "--homogeneous --out " +
                    sps.string())
                .code == 0);
    RunResult de = run_cli("decompose --in " + sps.string() + " --gate 0");
    REQUIRE(de.code == 0);
    json dj = json::parse(de.out);
    CHECK(dj["method"] == "fischer");
    CHECK(dj["terms"].is_array());
    CHECK(dj["terms"].size() <= 7); // 2^3 - 1

    fs::path abp = work_dir() / "abp.json";
    REQUIRE(run_cli("gen ordered-abp --n 2 --depth 3 --seed 4 --field 2 --out " +
                    abp.string())
                .code == 0);
    RunResult ab = run_cli("analyze --in " + abp.string());
    REQUIRE(ab.code == 0);
    json abj = json::parse(ab.out);
    CHECK(abj["kind"] == "abp");
    CHECK(abj["partitioned"] == true);
    CHECK(abj.contains("rank_bound"));
}

TEST_CASE("verify emits stable reports and meaningful exit codes") {
    RunResult a = run_cli("verify q-rank --seed 9");
    REQUIRE(a.code == 0);
    RunResult b = run_cli("verify q-rank --seed 9");
    CHECK(without_run_info(a.out) == without_run_info(b.out));

    json j = without_run_info(a.out);
    CHECK(j["summary"]["failed"] == 0);
    for (const auto& claim : j["claims"]) CHECK(claim["holds"] == true);

    // Single-size variant mirrors the library checker.
    RunResult c = run_cli("verify imm-rank --n 2 --d 3");
    REQUIRE(c.code == 0);
    json cj = json::parse(c.out);
    CHECK(cj["claims"][0]["claim"] == "imm-rank");
    CHECK(cj["claims"][0]["measured"] == "4");
    CHECK(cj["claims"][0]["bound"] == "4");

    // CSV format carries one row per claim.
    RunResult csv = run_cli("verify q-rank --format csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("claim,params,measured,bound,holds,seed,runtime_ms\n", 0) ==
          0);

    RunResult ex = run_cli("experiment --trials 30 --seed 2");
    CHECK(ex.code == 0);
}

TEST_SUITE_END();
