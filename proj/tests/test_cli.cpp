#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"

namespace {

using oracles::TempFile;

std::string binary() {
    const char* path = std::getenv("STREAMTRI_BIN");
    REQUIRE(path != nullptr);
    return path;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exact on a triangle file") {
    TempFile k3("1 2\n2 3\n3 1\n");
    RunResult r = run("exact " + k3.path());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "n=3 m=3 W=3 T=1 kappa=1.000000\n");
}

TEST_CASE("exact on an empty file") {
    TempFile empty("");
    RunResult r = run("exact " + empty.path());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "n=0 m=0 W=0 T=0 kappa=0.000000\n");
}

TEST_CASE("exit codes: parse, config and io errors") {
    TempFile bad("1 2\noops\n");
    CHECK(run("exact " + bad.path()).exit_code == 2);

    TempFile k3("1 2\n2 3\n3 1\n");
    CHECK(run("estimate " + k3.path() + " --se 1").exit_code == 2);
    CHECK(run("exact /nonexistent/nope.txt").exit_code == 3);
    CHECK(run("track " + k3.path() + " --output /nonexistent/dir/x.csv").exit_code == 3);
    CHECK(run("experiment frobnicate --input " + k3.path()).exit_code == 2);
    CHECK(run("estimate").exit_code == 2);
}

TEST_CASE("estimate is reproducible for a fixed seed") {
    TempFile graph([] {
        std::string s;
        // 9-vertex clique: 36 edges, plenty of closures.
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v)
                s += std::to_string(u) + " " + std::to_string(v) + "\n";
        return s;
    }());
    std::string args = "estimate " + graph.path() + " --se 8 --sw 4 --seed 12";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("t=36 ") != std::string::npos);

    RunResult c = run("estimate " + graph.path() + " --se 8 --sw 4 --seed 13");
    CHECK(c.out != a.out);
}

TEST_CASE("estimate reads standard input") {
    TempFile k3("1 2\n2 3\n3 1\n");
    std::string cmd = "cat " + k3.path() + " | " + binary() + " estimate - --se 2 --sw 1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[1024];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK(out.find("t=3 ") != std::string::npos);
}

TEST_CASE("track writes one row per interval") {
    TempFile graph([] {
        std::string s;
        for (int i = 0; i < 10; ++i)
            s += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
        return s;
    }());
    TempFile csv("");
    RunResult r =
        run("track " + graph.path() + " --every 5 --se 4 --sw 2 --output " + csv.path());
    CHECK(r.exit_code == 0);
    std::string text = read_file(csv.path());
    CHECK(text.starts_with("t,kappa_est,T_est,kappa_exact,T_exact,warmup\n"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 rows

    RunResult every1 =
        run("track " + graph.path() + " --every 1 --se 4 --sw 2 --output " + csv.path());
    CHECK(every1.exit_code == 0);
    std::string all = read_file(csv.path());
    CHECK(std::count(all.begin(), all.end(), '\n') == 11);
}

TEST_CASE("order writes a deterministic permutation") {
    TempFile graph("1 2\n2 3\n3 4\n4 1\n1 3\n");
    TempFile out1(""), out2("");
    CHECK(run("order " + graph.path() + " --ordering random --seed 7 --output " + out1.path())
              .exit_code == 0);
    CHECK(run("order " + graph.path() + " --ordering random --seed 7 --output " + out2.path())
              .exit_code == 0);
    std::string text = read_file(out1.path());
    CHECK(text == read_file(out2.path()));
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);

    CHECK(run("order " + graph.path() + " --ordering sideways --seed 7 --output " + out1.path())
              .exit_code == 2);
}

TEST_CASE("deg-desc ordering puts hub edges first") {
    TempFile star("0 1\n0 2\n0 3\n0 4\n1 2\n");
    TempFile out("");
    RunResult r = run("order " + star.path() + " --ordering deg-desc --output " + out.path());
    CHECK(r.exit_code == 0);
    std::istringstream in(read_file(out.path()));
    std::string line;
    for (int i = 0; i < 4; ++i) {
        REQUIRE(std::getline(in, line));
        CHECK(line.starts_with("0 "));
    }
}

TEST_CASE("experiment orderings emits a five-kind trial table") {
    TempFile graph([] {
        std::string s;
        for (int u = 0; u < 8; ++u)
            for (int v = u + 1; v < 8; ++v) s += std::to_string(u) + " " + std::to_string(v) + "\n";
        return s;
    }());
    TempFile csv("");
    RunResult r = run("experiment orderings --input " + graph.path() +
                      " --se 8 --sw 8 --trials 2 --output " + csv.path());
    CHECK(r.exit_code == 0);
    std::string text = read_file(csv.path());
    CHECK(text.starts_with("graph,ordering,seed,"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 11);  // header + 5 kinds x 2 trials
    for (const char* kind : {"random", "bfs", "dfs", "deg-asc", "deg-desc"})
        CHECK(text.find(kind) != std::string::npos);
}

TEST_CASE("experiment birthday reports the analytic value") {
    TempFile k3("1 2\n2 3\n3 1\n");
    TempFile csv("");
    RunResult r = run("experiment birthday --input " + k3.path() +
                      " --samples 2 --birthday-trials 20000 --output " + csv.path());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("analytic=0.666667") != std::string::npos);
}

TEST_CASE("unknown experiment lists the valid names") {
    TempFile k3("1 2\n2 3\n3 1\n");
    std::string cmd = binary() + " experiment nope --input " + k3.path() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[1024];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 2);
    for (const char* name : {"convergence", "sweep", "orderings", "singlebit", "birthday",
                             "tracking"})
        CHECK(out.find(name) != std::string::npos);
}
