// Process-level tests of the installed CLI: output shapes and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace testutil;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, bool keep_stderr = false) {
    const std::string cmd = std::string(AXIALCURV_CLI_PATH) + " " + args +
                            (keep_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "axialcurv_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& body) {
    const auto p = scratch_dir() / name;
    std::ofstream(p) << body;
    return p.string();
}

} // namespace

TEST_CASE("analyze: report JSON on stdout") {
    const RunResult r = run("analyze " + fixture_path("n3k1_worked.json"));
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["orbit"]["name"] == "Z2_0");
    CHECK(doc["locus"]["shape"] == "HalfStrip");
    CHECK(doc["monge"]["n"] == 3);
    CHECK(doc["axial"].size() == 2);
    CHECK(doc["axial_total"] == 4);
    CHECK(doc.contains("tolerance"));
    CHECK(doc.contains("checks"));
    // The input echo round-trips the parsed germ.
    const auto input_echo = doc["input"];
    std::ifstream in(fixture_path("n3k1_worked.json"));
    nlohmann::json raw;
    in >> raw;
    CHECK(input_echo["n"] == raw["n"]);
    CHECK(input_echo["k"] == raw["k"]);
}

TEST_CASE("analyze: --pretty, --out, --tol, --no-checks, --grid") {
    const auto out_path = (scratch_dir() / "report.json").string();

    const RunResult pretty = run("analyze --pretty " + fixture_path("n3k2_worked.json"));
    REQUIRE(pretty.exit_code == 0);
    CHECK(pretty.out.find("orbit") != std::string::npos);
    CHECK(pretty.out.find("kappa_a1") != std::string::npos);

    const RunResult to_file =
        run("analyze --out " + out_path + " " + fixture_path("n2k1_parabola.json"));
    REQUIRE(to_file.exit_code == 0);
    CHECK(to_file.out.empty());
    std::ifstream saved(out_path);
    REQUIRE(saved.good());
    nlohmann::json doc;
    saved >> doc;
    CHECK(doc["orbit"]["name"] == "NondegParabola");

    const RunResult tol = run("analyze --tol 1e-6 " + fixture_path("n2k1_parabola.json"));
    REQUIRE(tol.exit_code == 0);
    CHECK(nlohmann::json::parse(tol.out)["tolerance"] == 1e-6);

    const RunResult bare =
        run("analyze --no-checks " + fixture_path("n3k1_worked.json"));
    REQUIRE(bare.exit_code == 0);
    CHECK(nlohmann::json::parse(bare.out)["checks"].empty());

    const RunResult grid =
        run("analyze --grid 24,11,512 " + fixture_path("n3k1_worked.json"));
    CHECK(grid.exit_code == 0);

    const RunResult bad_grid =
        run("analyze --grid 24 " + fixture_path("n3k1_worked.json"));
    CHECK(bad_grid.exit_code == 1);
}

TEST_CASE("locus: CSV shape for both source dimensions") {
    const RunResult r3 = run("locus --grid 10,5 " + fixture_path("n3k1_worked.json"));
    REQUIRE(r3.exit_code == 0);
    std::istringstream in(r3.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "theta,gamma,c1,c2");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 10 * 5);

    const RunResult r2 = run("locus --grid 10,5 " + fixture_path("n2k1_halfline.json"));
    REQUIRE(r2.exit_code == 0);
    CHECK(r2.out.rfind("y,c1,c2\n", 0) == 0);

    const RunResult ranged = run("locus --grid 4,3 --gamma-range=-1,1 " +
                                 fixture_path("n2k1_halfline.json"));
    REQUIRE(ranged.exit_code == 0);
    CHECK(ranged.out.find("\n-1,") != std::string::npos);
}

TEST_CASE("verify: single file and corpus mode") {
    const RunResult single = run("verify " + fixture_path("n3k2_worked.json"), true);
    REQUIRE(single.exit_code == 0);
    CHECK(single.out.find("all applicable checks passed") != std::string::npos);

    const RunResult corpus = run(std::string("verify --corpus ") + AXIALCURV_FIXTURE_DIR);
    REQUIRE(corpus.exit_code == 0);
    const auto doc = nlohmann::json::parse(corpus.out);
    REQUIRE(doc.is_array());
    CHECK(doc.size() >= 20);
    for (const auto& entry : doc) {
        CHECK(entry.contains("file"));
        CHECK(entry["checks"].is_array());
        for (const auto& c : entry["checks"]) CHECK(c["status"] != "fail");
    }
}

TEST_CASE("verify: a genuinely violated identity exits with code 4") {
    // On the half-line stratum the curve identity requires a_11 = 0. With a
    // loose tolerance this near-miss germ becomes "applicable" while the
    // identity itself is off by ~6e-6, which the fixed check tolerance
    // rejects.
    const std::string germ = R"({"n":2,"k":1,"components":[
      [{"exp":[1,0],"coeff":1}],
      [{"exp":[2,0],"coeff":"3/2"},{"exp":[1,1],"coeff":"1/1000"},{"exp":[0,2],"coeff":"1/2"}],
      [{"exp":[2,0],"coeff":1}]]})";
    const auto dir = scratch_dir() / "failing_corpus";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "near_miss.json") << germ;

    const RunResult strict = run("verify " + (dir / "near_miss.json").string());
    CHECK(strict.exit_code == 0); // tight tolerance: precondition not met

    const RunResult loose =
        run("verify --tol 1e-2 --corpus " + dir.string(), true);
    CHECK(loose.exit_code == 4);
    CHECK(loose.out.find("FAIL") != std::string::npos);

    // The same loosening through the environment variable.
    const std::string env_cmd = std::string("AXIALCURV_TOL=1e-2 ") + AXIALCURV_CLI_PATH +
                                " verify " + (dir / "near_miss.json").string() +
                                " 2>/dev/null; printf exit=%d $?";
    FILE* pipe = popen(env_cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[256];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    CHECK(out.find("exit=4") != std::string::npos);
}

TEST_CASE("exit codes: schema, corank, unsupported, missing file") {
    const std::string bad_schema = write_scratch("bad_schema.json", R"({"n":2,"k":1})");
    CHECK(run("analyze " + bad_schema).exit_code == 1);

    const std::string corank0 = write_scratch("corank0.json",
        R"({"n":2,"k":1,"components":[[{"exp":[1,0],"coeff":1}],)"
        R"([{"exp":[0,1],"coeff":1}],[{"exp":[2,0],"coeff":1}]]})");
    CHECK(run("analyze " + corank0).exit_code == 2);
    CHECK(run("locus " + corank0).exit_code == 2);
    CHECK(run("verify " + corank0).exit_code == 2);

    const std::string n4 = write_scratch("n4.json",
        R"({"n":4,"k":1,"components":[[{"exp":[1,0,0,0],"coeff":1}],)"
        R"([{"exp":[0,1,0,0],"coeff":1}],[{"exp":[0,0,1,0],"coeff":1}],)"
        R"([{"exp":[2,0,0,0],"coeff":1}],[{"exp":[0,0,0,2],"coeff":1}]]})");
    const RunResult un = run("analyze " + n4, true);
    CHECK(un.exit_code == 3);
    CHECK(un.out.find("n=2") != std::string::npos);

    const std::string not_germ = write_scratch("not_germ.json",
        R"({"n":2,"k":1,"components":[[{"exp":[1,0],"coeff":1},{"exp":[0,0],"coeff":3}],)"
        R"([{"exp":[0,1],"coeff":1}],[{"exp":[2,0],"coeff":1}]]})");
    CHECK(run("analyze " + not_germ).exit_code == 1);

    CHECK(run("analyze /nonexistent/none.json").exit_code == 1);
    CHECK(run("").exit_code != 0);                 // missing subcommand
    CHECK(run("analyze").exit_code != 0);          // missing path
}
