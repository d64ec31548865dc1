// End-to-end checks of the command-line tool: exit codes, determinism and
// the documented pipeline on generated fixture files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string tmp_dir() {
    static int counter = 0;
    std::string dir = "/tmp/qgkm_cli_test_" + std::to_string(counter++);
    std::string cmd = "mkdir -p " + dir;
    REQUIRE(std::system(cmd.c_str()) == 0);
    return dir;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string out_file = tmp_dir() + "/out.txt";
    std::string cmd = std::string(QGKM_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {WEXITSTATUS(rc), buffer.str()};
}

std::string fixture_file(const std::string& name, const std::string& extra = "") {
    std::string dir = tmp_dir();
    std::string path = dir + "/" + name + ".json";
    auto r = run("fixture " + name + " " + extra + " --out " + path);
    REQUIRE(r.exit_code == 0);
    return path;
}

}  // namespace

TEST_CASE("classify exit codes") {
    CHECK(run("classify " + fixture_file("fl_n", "--n 4")).exit_code == 0);
    CHECK(run("classify " + fixture_file("point")).exit_code == 0);
    auto sink = run("classify " + fixture_file("no_gkm_sink"));
    CHECK(sink.exit_code == 2);
    CHECK(sink.output.find("NO_GKM") != std::string::npos);
    CHECK(sink.output.find("two_sink") != std::string::npos);
    CHECK(run("classify " + fixture_file("no_gkm_source")).exit_code == 2);
}

TEST_CASE("classify reports the reduction trace on the Schubert fixture") {
    auto r = run("classify " + fixture_file("x3124"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("GKM_STRAIGHT") != std::string::npos);
    CHECK(r.output.find("remove_vertex 3") != std::string::npos);
}

TEST_CASE("unknown-tree instances exit with code 3") {
    // Branching summands padded by singleton strings: nothing reduces.
    std::string path = tmp_dir() + "/tree.json";
    std::ofstream(path) << R"({
      "quiver": {"vertices": ["1","2","3","4"],
                 "arrows": [{"id":"a","source":"1","target":"2"},
                             {"id":"b","source":"2","target":"3"},
                             {"id":"c","source":"2","target":"4"}]},
      "forest": {"components": [
        {"vertices": [{"id":"r1","over":"1"},{"id":"s1","over":"2"},
                       {"id":"u1","over":"3"},{"id":"v1","over":"4"}],
         "arrows": [{"source":"r1","target":"s1","over":"a"},
                     {"source":"s1","target":"u1","over":"b"},
                     {"source":"s1","target":"v1","over":"c"}]},
        {"vertices": [{"id":"r2","over":"1"},{"id":"s2","over":"2"},
                       {"id":"u2","over":"3"},{"id":"v2","over":"4"}],
         "arrows": [{"source":"r2","target":"s2","over":"a"},
                     {"source":"s2","target":"u2","over":"b"},
                     {"source":"s2","target":"v2","over":"c"}]},
        {"vertices": [{"id":"c2","over":"2"}], "arrows": []},
        {"vertices": [{"id":"c3","over":"3"}], "arrows": []},
        {"vertices": [{"id":"c4","over":"4"}], "arrows": []}]},
      "dimension_vector": {"1": 1, "2": 1, "3": 1, "4": 1}
    })";
    CHECK(run("classify " + path).exit_code == 3);
}

TEST_CASE("parse errors exit with code 1") {
    std::string path = tmp_dir() + "/broken.json";
    std::ofstream(path) << "{ not json";
    CHECK(run("classify " + path).exit_code == 1);
    CHECK(run("classify /nonexistent/file.json").exit_code == 1);
}

TEST_CASE("poincare values") {
    std::string fl4 = fixture_file("fl_n", "--n 4");
    auto coeffs = run("poincare " + fl4);
    CHECK(coeffs.exit_code == 0);
    CHECK(coeffs.output == "[1,3,5,6,5,3,1]\n");
    auto at2 = run("poincare " + fl4 + " --at 2");
    CHECK(at2.output == "315\n");
}

TEST_CASE("oracle subcommands") {
    std::string a2 = fixture_file("a2_p1");
    auto count = run("oracle count-points " + a2 + " --p 3");
    CHECK(count.exit_code == 0);
    CHECK(count.output.find("count: 4") != std::string::npos);
    auto fixed = run("oracle fixed-points " + a2);
    CHECK(fixed.output.find("count: 2") != std::string::npos);
    auto hom = run("oracle hom-dim " + a2);
    CHECK(hom.exit_code == 0);
}

TEST_CASE("non-straight string instances fail pipeline preconditions") {
    std::string sink = fixture_file("no_gkm_sink");
    CHECK(run("poincare " + sink).exit_code == 4);
    CHECK(run("moment-graph " + sink).exit_code == 4);
}

TEST_CASE("moment graph outputs are byte-deterministic") {
    std::string fl4 = fixture_file("fl_n", "--n 4");
    auto first = run("moment-graph " + fl4);
    auto second = run("moment-graph " + fl4);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("edges: 72") != std::string::npos);

    std::string dot1 = tmp_dir() + "/g1.dot";
    std::string dot2 = tmp_dir() + "/g2.dot";
    CHECK(run("moment-graph " + fl4 + " --dot " + dot1).exit_code == 0);
    CHECK(run("moment-graph " + fl4 + " --dot " + dot2).exit_code == 0);
    std::ifstream f1(dot1), f2(dot2);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
    CHECK(b1.str().find("digraph") != std::string::npos);
}

TEST_CASE("kt-basis writes a basis that verifies") {
    std::string x = fixture_file("x3124");
    std::string basis = tmp_dir() + "/basis.json";
    auto wrote = run("kt-basis " + x + " --out " + basis);
    CHECK(wrote.exit_code == 0);
    CHECK(wrote.output.find("unique: true") != std::string::npos);
    auto verify = run("kt-basis " + x + " --verify " + basis);
    CHECK(verify.exit_code == 0);
    CHECK(verify.output.find("verified") != std::string::npos);
}

TEST_CASE("grading output and check") {
    std::string a2 = fixture_file("a2_p1");
    auto r = run("grading " + a2);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("gamma:") != std::string::npos);
    CHECK(r.output.find("weights:") != std::string::npos);

    std::string wt = tmp_dir() + "/wt.json";
    std::ofstream(wt) << R"({"weights": {"x1": 0, "x2": 1, "y1": 0, "y2": 2}})";
    auto check = run("grading " + a2 + " --check " + wt);
    CHECK(check.exit_code == 0);
    CHECK(check.output.find("constructible no") != std::string::npos);
}

TEST_CASE("fixed-points and tangent tables") {
    std::string fl4 = fixture_file("fl_n", "--n 4");
    auto fixed = run("fixed-points " + fl4);
    CHECK(fixed.exit_code == 0);
    CHECK(fixed.output.find("count: 24") != std::string::npos);
    CHECK(fixed.output.find("perm 1234") != std::string::npos);
    auto tangent = run("tangent " + fl4);
    CHECK(tangent.output.find("tangent 6") != std::string::npos);
    auto hall = run("hall-strata " + fl4);
    CHECK(hall.output.find("strata: 1") != std::string::npos);
}
