#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(NONRES_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, TableSingleCell) {
    const auto r = run("table --n0 1 --p0 1e7 --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n0,1e7\n1,1.530\n");
}

TEST(Cli, TableBelowThreshold) {
    const auto r = run("table --p0 1e3 --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n0,1e3\n1,-\n2,-\n3,-\n4,-\n5,-\n6,-\n7,-\n8,-\n");
}

TEST(Cli, TableBadArguments) {
    EXPECT_EQ(run("table --n0 x").code, 2);
    EXPECT_EQ(run("table --p0 1e7,abc").code, 2);
    EXPECT_EQ(run("table --bogus").code, 2);
}

TEST(Cli, Nonresidues) {
    EXPECT_EQ(run("nonresidues --p 7 --d 2 --n 3").out, "3 5 13\n");
    EXPECT_EQ(run("nonresidues --p 5 --n 2").out, "2 3\n");
    const auto empty = run("nonresidues --p 5 --n 0");
    EXPECT_EQ(empty.code, 0);
    EXPECT_EQ(empty.out, "\n");
    EXPECT_EQ(run("nonresidues --p 8 --n 1").code, 2);
    EXPECT_EQ(run("nonresidues --p 7 --d 4").code, 2);
    EXPECT_EQ(run("nonresidues --p 1000003 --n 5 --cap 10").code, 3);
}

TEST(Cli, Bound) {
    const auto ok = run("bound --n 1 --p 1e7");
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("1.529"), std::string::npos);
    EXPECT_EQ(run("bound --n 1 --p 1e6").code, 2);
    EXPECT_EQ(run("bound --n 1 --p 5e6 --n0 1 --p0 1e7").code, 0);
    EXPECT_EQ(run("bound --n 2 --p 1e8 --n0 1 --p0 1e8").code, 2);
}

TEST(Cli, Verify) {
    EXPECT_EQ(run("verify").code, 2);
    EXPECT_EQ(run("verify --lemma nope").code, 2);
    const auto r = run("verify --lemma stirling --r-max 500");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, ScanDeterministicAcrossThreads) {
    const std::string base = "scan --p-lo 1e7 --p-hi 1e7+2e4 --n-max 1 --shard-width 2000";
    const auto a = run(base + " -j 1");
    const auto b = run(base + " -j 4");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run("scan --p-lo 1e6 --p-hi 2e6 --n0 1 --p0 1e7").code, 2);
}

TEST(Cli, ScanViolationExitCode) {
    EXPECT_EQ(run("scan --p-lo 1e7 --p-hi 1e7+1e3 --constant 0.0001 --n0 1 --p0 1e7").code, 1);
}

TEST(Cli, ThreadsFromEnvironment) {
    const auto r = run("scan --p-lo 1e7 --p-hi 1e7+5e3 --n-max 1");
    const std::string cmd = std::string("NONRES_THREADS=3 ") + NONRES_CLI +
                            " scan --p-lo 1e7 --p-hi 1e7+5e3 --n-max 1 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    EXPECT_EQ(WEXITSTATUS(pclose(pipe)), 0);
    EXPECT_EQ(out, r.out);
}
