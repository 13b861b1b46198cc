#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string tmp = std::string(LINKFORGE_CLI_PATH) + ".out.tmp";
    const std::string cmd = std::string(LINKFORGE_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(tmp.c_str());
    return {WEXITSTATUS(status), ss.str()};
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') n++;
    return n;
}

} // namespace

TEST_CASE("reproduce-example1 exit codes") {
    CHECK(run_cli("reproduce-example1").exit_code == 0);
    CHECK(run_cli("reproduce-example1 --convention eq3").exit_code == 1);
    // roots stay resolvable at low sampling density
    CHECK(run_cli("reproduce-example1 --samples 64").exit_code == 0);
}

TEST_CASE("quad critical") {
    const RunResult r = run_cli("quad critical --sides 6,6.5,6.2,5.8 --t 2 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 6);   // comment + header + 4 rows
    const RunResult r0 = run_cli("quad critical --sides 6,6.5,6.2,5.8 --t 0 --format csv");
    CHECK(count_lines(r0.output) == 4);  // 2 rows
    CHECK(run_cli("quad critical --sides 6,6.5").exit_code == 2);
    CHECK(run_cli("quad critical --sides 10,1,1,1 --t 1").exit_code == 2);
    CHECK(run_cli("quad critical --sides 6,6.5,6.2,5.8 --t 1 --alpha -2").exit_code == 2);
}

TEST_CASE("quad stabilize") {
    const RunResult r = run_cli("quad stabilize --sides 6,6.5,6.2,5.8 --x 9.5889 --y 7.6087");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"t\": 2.000") != std::string::npos);
    const RunResult rb = run_cli("quad stabilize --sides 6,6.5,6.2,5.8 --x 12 --y 1.74952");
    CHECK(rb.exit_code == 0);
    CHECK(rb.output.find("\"boundary\": true") != std::string::npos);
    CHECK(run_cli("quad stabilize --sides 6,6.5,6.2,5.8 --x 4.11 --y 0.30").exit_code == 2);
}

TEST_CASE("quad navigate") {
    const RunResult r = run_cli(
        "quad navigate --sides 6,6.5,6.2,5.8 --start-x 1.25 --start-y 0.6 "
        "--target-x 9.5889 --target-y 7.6087");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"converged\": true") != std::string::npos);
}

TEST_CASE("oval trace format") {
    const RunResult r = run_cli("oval trace --sides 6,6.5,6.2,5.8 --samples 512");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 514);
    std::istringstream ss(r.output);
    std::string line;
    std::getline(ss, line);   // comment
    std::getline(ss, line);
    CHECK(line == "phi,w,z,x,y,sgn_Fx,sgn_Fy,region,g_residual");
    // contiguous region arcs: count sign-pair transitions around the circle
    int transitions = 0;
    std::string prev_region, first_region;
    int rows = 0;
    while (std::getline(ss, line)) {
        std::istringstream ls(line);
        std::string field;
        std::array<std::string, 9> fields;
        int i = 0;
        while (std::getline(ls, field, ',') && i < 9) fields[static_cast<size_t>(i++)] = field;
        REQUIRE(i == 9);
        const double w = std::stod(fields[1]);
        const double z = std::stod(fields[2]);
        CHECK(w <= 156.25 + 1e-9);
        CHECK(z <= 161.29 + 1e-9);
        CHECK(std::abs(std::stod(fields[8])) <= 1e-10);
        if (rows == 0) first_region = fields[7];
        else if (fields[7] != prev_region) transitions++;
        prev_region = fields[7];
        rows++;
    }
    if (prev_region != first_region) transitions++;
    CHECK(rows == 512);
    CHECK(transitions == 4);
}

TEST_CASE("byte-identical reproducibility") {
    const std::string args = "census --trials 10 --seed 31415 --out " +
                             std::string(LINKFORGE_CLI_PATH) + ".census";
    CHECK(run_cli(args).exit_code == 0);
    std::stringstream a, b;
    {
        std::ifstream f(std::string(LINKFORGE_CLI_PATH) + ".census.csv");
        a << f.rdbuf();
    }
    CHECK(run_cli(args).exit_code == 0);
    {
        std::ifstream f(std::string(LINKFORGE_CLI_PATH) + ".census.csv");
        b << f.rdbuf();
    }
    CHECK(a.str() == b.str());
    CHECK(a.str().find("seed=31415") != std::string::npos);
    std::remove((std::string(LINKFORGE_CLI_PATH) + ".census.csv").c_str());
    std::remove((std::string(LINKFORGE_CLI_PATH) + ".census.json").c_str());
}

TEST_CASE("pentagon commands") {
    const RunResult r = run_cli("pentagon stabilize --x13 1.61803398874989 --x35 1.61803398874989");
    CHECK(r.exit_code == 0);
    auto field = [&](const std::string& key) {
        const size_t pos = r.output.find("\"" + key + "\": ");
        REQUIRE(pos != std::string::npos);
        return std::stod(r.output.substr(pos + key.size() + 4));
    };
    CHECK(std::abs(field("s") - 1.0) < 1e-8);
    CHECK(std::abs(field("t") - 1.0) < 1e-8);
    const RunResult rv = run_cli("pentagon verify --x13 1.5 --x35 1.7 --s 1 --t 1");
    CHECK(rv.exit_code == 0);
    CHECK(rv.output.find("\"critical\": false") != std::string::npos);
    // aligned chart point: not strictly convex
    CHECK(run_cli("pentagon stabilize --x13 2.0 --x35 1.5").exit_code == 2);
    const RunResult rp = run_cli("pentagon probe --x13 1.5 --x35 1.7 --seeds 8 --seed 3");
    CHECK(rp.exit_code == 0);
    CHECK(rp.output.find("no_lower_found") != std::string::npos);
}

TEST_CASE("seed environment fallback") {
    const std::string tmp = std::string(LINKFORGE_CLI_PATH) + ".env.tmp";
    const std::string cmd = "LINKFORGE_SEED=777 " + std::string(LINKFORGE_CLI_PATH) +
                            " quad critical --sides 6,6.5,6.2,5.8 --t 2 > " + tmp + " 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(tmp.c_str());
    CHECK(ss.str().find("\"seed\": 777") != std::string::npos);
}

TEST_CASE("spec file dispatch") {
    const std::string spec_path = std::string(LINKFORGE_CLI_PATH) + ".spec.json";
    {
        std::ofstream f(spec_path);
        f << R"({"command":"quad critical","sides":[6,6.5,6.2,5.8],"t":2.0})";
    }
    const RunResult r = run_cli("--spec " + spec_path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"count\": 4") != std::string::npos);
    std::remove(spec_path.c_str());
}
