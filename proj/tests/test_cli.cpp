#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "repfam/cli.hpp"
#include "repfam/report.hpp"

using namespace repfam;

namespace {

const std::filesystem::path kData = REPFAM_DATA_DIR;

struct CliRun {
    int code;
    std::string out;
    std::string err;

    Json json() const { return Json::parse(out); }
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

}  // namespace

TEST(Cli, BoundsReproducesTunedBase) {
    const CliRun r = run({"bounds", "--k", "40", "--p-frac", "0.55277", "--c", "1.447"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j["subcommand"], "bounds");
    EXPECT_NEAR(j["answer"]["base"].get<double>(), 2.618, 1e-3);
    EXPECT_NEAR(j["answer"]["kiob_base"].get<double>(), 6.854, 1e-3);
}

TEST(Cli, BoundsRejectsBothSetSizeFlags) {
    EXPECT_EQ(run({"bounds", "--k", "4", "--p", "2", "--p-frac", "0.5"}).code, kExitInput);
}

TEST(Cli, PcoverSolvesFileInstance) {
    const CliRun r = run({"pcover", data("pcover_k4.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j["answer"], 3);
    EXPECT_EQ(j["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
    // optimization problems exit 0 even when infeasible
    const CliRun none = run({"pcover", data("pcover_k4.txt"), "--k", "6"});
    EXPECT_EQ(none.code, kExitOk);
    EXPECT_TRUE(none.json()["answer"].is_null());
}

TEST(Cli, KiobOnStarIsNo) {
    const CliRun r = run({"kiob", data("star4.graph"), "--k", "2"});
    EXPECT_EQ(r.code, kExitNo);
    EXPECT_EQ(r.json()["answer"], false);
    EXPECT_EQ(run({"kiob", data("star4.graph"), "--k", "1"}).code, kExitOk);
}

TEST(Cli, KtTreeAndKdsAndKpath) {
    EXPECT_EQ(run({"kttree", data("path3.graph"), "--k", "2", "--t", "1"}).json()["answer"], true);
    EXPECT_EQ(run({"kds", data("path4.graph"), "--k", "4"}).json()["answer"], 2);
    EXPECT_EQ(run({"kpath", data("triangle.wgraph"), "--k", "3"}).json()["answer"], 3.0);
    EXPECT_EQ(run({"kpath", data("triangle.wgraph"), "--k", "2", "--length", "edges"}).json()["answer"], 3.0);
}

TEST(Cli, RepfamAndVerify) {
    const CliRun r = run({"repfam", data("weighted_family.txt"), "--debug-verify", "--skip-threshold", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["verification"]["failures"], 0);
    const CliRun v = run({"verify", data("small_family.txt"), "--sub", data("small_subfamily.txt")});
    EXPECT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(v.json()["answer"]["represents"], true);
}

TEST(Cli, UnknownFlagIsInputError) {
    const CliRun r = run({"pcover", data("pcover_k4.txt"), "--bogus"});
    EXPECT_EQ(r.code, kExitInput);
    EXPECT_NE(r.err.find("pcover"), std::string::npos);
    EXPECT_EQ(run({}).code, kExitInput);
    EXPECT_EQ(run({"pcover", data("missing.txt")}).code, kExitInput);
}

TEST(Cli, SeparatorCapIsResourceError) {
    ::setenv("REPFAM_MAX_SEPARATOR", "5", 1);
    const CliRun r = run({"separator", "--n", "12", "--k", "4", "--p", "2"});
    ::unsetenv("REPFAM_MAX_SEPARATOR");
    EXPECT_EQ(r.code, kExitResource);
    EXPECT_EQ(run({"separator", "--n", "12", "--k", "4", "--p", "2", "--verify"}).code, kExitOk);
}

TEST(Cli, DeterministicAcrossRunsAndThreads) {
    const std::vector<std::vector<std::string>> commands{
        {"repfam", data("weighted_family.txt"), "--skip-threshold", "0"},
        {"pcover", data("pcover_k4.txt"), "--skip-threshold", "0"},
        {"kttree", data("path4.graph"), "--k", "2", "--t", "2", "--skip-threshold", "0"},
        {"kpath", data("triangle.wgraph"), "--k", "3", "--skip-threshold", "0"},
        {"separator", "--n", "10", "--k", "4", "--p", "2", "--verify"},
    };
    for (auto args : commands) {
        const Json first = without_timings(run(args).json());
        EXPECT_EQ(without_timings(run(args).json()).dump(), first.dump()) << args[0];
        args.insert(args.end(), {"--threads", "8"});
        EXPECT_EQ(without_timings(run(args).json()).dump(), first.dump()) << args[0];
    }
}

TEST(Cli, BenchEmptySuite) {
    const CliRun r = run({"bench", "--suite", "empty"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.json()["answer"]["rows"].empty());
    EXPECT_EQ(run({"bench", "--suite", "nope"}).code, kExitInput);
}

TEST(Cli, TextFormat) {
    const CliRun r = run({"--format", "text", "pcover", data("pcover_k4.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("answer: 3"), std::string::npos);
    const CliRun after = run({"pcover", data("pcover_k4.txt"), "--format", "text"});
    EXPECT_EQ(after.out.substr(0, after.out.find("timings.")), r.out.substr(0, r.out.find("timings.")));
}

TEST(Cli, RepfamWritesSubfamilyFile) {
    const auto path = std::filesystem::temp_directory_path() / "repfam_cli_out.txt";
    const CliRun r = run({"repfam", data("small_family.txt"), "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.substr(0, 2), "5 ");
    std::filesystem::remove(path);
}
