// End-to-end tests that drive the installed CLI binary through a shell.
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "trihit/io.hpp"

namespace {

struct CliResult {
    int code = -1;
    std::string out;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd;
    if (!env_prefix.empty()) {
        cmd += env_prefix;
        cmd += ' ';
    }
    cmd += '\'';
    cmd += TRIHIT_CLI_PATH;
    cmd += "' ";
    cmd += args;
    cmd += " 2>&1";

    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string temp_path(const std::string& stem) {
    return "/tmp/trihit_cli_" + std::to_string(::getpid()) + "_" + stem;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("compute prints the analytic table for a needle") {
    CliResult r = run_cli("compute --lattice 1,1,1 --needle 0.5");
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "p(1) = 0.201841099678"));
    CHECK(contains(r.out, "p(5) = 0.000000000000000"));
    CHECK(contains(r.out, "E[Z] = 2.1026577908"));
    CHECK(contains(r.out, "method = closed_form"));
    CHECK(contains(r.out, "rho ="));
}

TEST_CASE("method override routes to the integral engine") {
    CliResult r = run_cli("compute --lattice 1,1,1 --needle 0.5 --method theorem1");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "method = theorem1"));
    CHECK(contains(r.out, "p(1) = 0.201841099678"));
}

TEST_CASE("compute writes machine-checkable JSON to a file") {
    const std::string path = temp_path("disc.json");
    CliResult r = run_cli("compute --lattice 3,4,5 --disc 0.3 --output '" + path + "'");
    CHECK(r.code == 0);
    CHECK(r.out.empty());  // file output suppresses the console table

    std::ifstream in(path);
    REQUIRE(in.good());
    const trihit::HitDistribution d =
        trihit::distribution_from_json(nlohmann::json::parse(in));
    CHECK(std::fabs(d.p[5] - 0.023561944901923449) < 1e-12);
    CHECK(d.method == trihit::Method::symmetric_fastpath);
    CHECK(d.condition_margin > 0.0);
    std::remove(path.c_str());
}

TEST_CASE("compute emits CSV on request") {
    CliResult r = run_cli("compute --lattice 3,4,5 --disc 0.3 --format csv");
    CHECK(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == trihit::kComputeHeader);
    // sixth probability column holds the containment probability
    const char* p = lines[1].c_str();
    double cols[8] = {0};
    for (int i = 0; i < 8; ++i) {
        char* end = nullptr;
        cols[i] = std::strtod(p, &end);
        p = *end == ',' ? end + 1 : end;
    }
    CHECK(std::fabs(cols[5] - 0.023561944901923449) < 1e-12);
}

TEST_CASE("format follows the output extension") {
    const std::string path = temp_path("needle.csv");
    CliResult r = run_cli("compute --lattice 1,1,1 --needle 0.5 --output '" + path + "'");
    CHECK(r.code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == trihit::kComputeHeader);
    std::remove(path.c_str());

    CliResult bad = run_cli("compute --lattice 1,1,1 --needle 0.5 --output '" +
                            temp_path("noext.dat") + "'");
    CHECK(bad.code == 4);
    CHECK(contains(bad.out, "format"));
}

TEST_CASE("oversized bodies exit with the dedicated code unless forced") {
    CliResult r = run_cli("compute --lattice 1,1,1 --disc 0.5");
    CHECK(r.code == 2);
    CHECK(contains(r.out, "error:"));
    CHECK(contains(r.out, "fit condition"));

    CliResult forced = run_cli("compute --lattice 1,1,1 --disc 0.5 --force");
    CHECK(forced.code == 0);
    CHECK(contains(forced.out, "fit condition violated; extrapolated"));
}

TEST_CASE("bad command lines exit with code 4") {
    CHECK(run_cli("compute --lattice 1,1,1").code == 4);                    // no shape
    CHECK(run_cli("compute --lattice 1,1,1 --needle 0.2 --disc 0.1").code == 4);  // two shapes
    CHECK(run_cli("compute --lattice 1,1,1 --rect 0.4").code == 4);         // bad arity
    CHECK(run_cli("compute --lattice 1,1,5 --needle 0.2").code == 4);       // degenerate lattice
    CHECK(run_cli("frobnicate --lattice 1,1,1 --needle 0.2").code == 4);    // unknown subcommand
    CHECK(run_cli("compute --lattice 1,1,1 --needle 0.2 --method guess").code == 4);
    CHECK(run_cli("compute --lattice 1,1,1 --needle -0.2").code == 4);      // negative length

    CliResult noshape = run_cli("compute --lattice 1,1,1");
    CHECK(contains(noshape.out, "exactly one shape"));
}

TEST_CASE("help exits cleanly") {
    CliResult r = run_cli("compute --help");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "--lattice"));
    CHECK(contains(r.out, "--needle"));
}

TEST_CASE("polygons require the integral engine") {
    const std::string path = temp_path("tri.txt");
    {
        std::ofstream out(path);
        out << "# a small triangle\n0 0\n0.2 0\n0.1 0.15\n";
    }
    CliResult r = run_cli("compute --lattice 1,1,1 --polygon '" + path + "'");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "method = theorem1"));

    CliResult closed = run_cli("compute --lattice 1,1,1 --polygon '" + path + "' --method closed");
    CHECK(closed.code == 4);
    CHECK(contains(closed.out, "no closed form"));
    std::remove(path.c_str());
}

TEST_CASE("simulation seed resolution: flag beats environment beats default") {
    const std::string base = "compute --lattice 3,4,5 --disc 0.2 --method simulate -n 20000";
    CliResult def = run_cli(base);
    CHECK(def.code == 0);
    CHECK(contains(def.out, "seed = 42"));

    CliResult env = run_cli(base, "TRILAT_SEED=777");
    CHECK(env.code == 0);
    CHECK(contains(env.out, "seed = 777"));

    CliResult flag = run_cli(base + " --seed 123", "TRILAT_SEED=777");
    CHECK(flag.code == 0);
    CHECK(contains(flag.out, "seed = 123"));

    CliResult garbage = run_cli(base, "TRILAT_SEED=notanumber");
    CHECK(garbage.code == 4);
    CHECK(contains(garbage.out, "TRILAT_SEED"));
}

TEST_CASE("identical seeds reproduce identical simulations") {
    const std::string base =
        "compute --lattice 3,4,5 --rect 0.4,0.2 --method simulate -n 20000 --seed 5";
    CliResult a = run_cli(base);
    CliResult b = run_cli(base);
    CHECK(a.code == 0);
    // elapsed time differs between runs; compare everything above that line
    auto head = [](const std::string& s) { return s.substr(0, s.rfind("\nn = ")); };
    CHECK(head(a.out) == head(b.out));
    CHECK(!a.out.empty());
}

TEST_CASE("compare agrees with its own simulator and fails when corrupted") {
    const std::string base = "compare --lattice 1,1,1 --needle 0.3 -n 10000 --seed 11";
    CliResult ok = run_cli(base);
    CAPTURE(ok.out);
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "PASS"));

    CliResult bad = run_cli(base + " --selftest-corrupt");
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "FAIL"));

    CHECK(run_cli("compare --lattice 1,1,1 --needle 0.3 -n 5000").code == 4);  // n too small
    CHECK(run_cli("compare --lattice 1,1,1 --needle 0.3 --method simulate").code == 4);
}

TEST_CASE("sweep emits a CSV table with blank rows where the body stops fitting") {
    CliResult r = run_cli(
        "sweep --lattice 1,1,1 --needle 0.1 --param ell --range 0.3:1.2 --steps 4");
    CHECK(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == trihit::kSweepHeader);
    // 0.3 and 0.6 fit inside the unit triangle; 0.9 and 1.2 cannot
    CHECK(!contains(lines[1], ",,"));
    CHECK(!contains(lines[2], ",,"));
    CHECK(contains(lines[3], ",,,,,,,"));
    CHECK(contains(lines[4], ",,,,,,,"));
    CHECK(std::strtod(lines[1].c_str(), nullptr) == 0.3);

    CHECK(run_cli("sweep --lattice 1,1,1 --needle 0.1 --param r --range 0.1:0.2 --steps 2")
              .code == 4);  // parameter does not match the shape
    CHECK(run_cli("sweep --lattice 1,1,1 --needle 0.1 --param ell --range 0.2:0.1 --steps 2")
              .code == 4);  // descending range
    CHECK(run_cli("sweep --lattice 1,1,1 --needle 0.1 --param ell --range 0.1:0.2 --steps 2 "
                  "--format json")
              .code == 4);  // sweep is CSV-only
}
