#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result sh(const std::string& args) {
    const std::string cmd = std::string(STARCALC_BIN) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("starcalc_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const fs::path kCorpus = CORPUS_DIR;

}  // namespace

TEST(Cli, RunPassingRecipe) {
    const auto r = sh("run " + (kCorpus / "X_noether.json").string());
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("X_noether"), std::string::npos);
}

TEST(Cli, RunMachine) {
    const auto r = sh("--machine run " + (kCorpus / "Z_between.json").string());
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("geography").at("chi_h"), 5);
    EXPECT_EQ(j.at("geography").at("c1sq"), 3);
    // flag after the subcommand works too
    EXPECT_EQ(sh("run --machine " + (kCorpus / "Z_between.json").string()).out, r.out);
}

TEST(Cli, StrictTurnsDiscrepancyIntoFailure) {
    const auto path = (kCorpus / "Y_between.json").string();
    EXPECT_EQ(sh("run " + path).code, 0);
    EXPECT_EQ(sh("--strict run " + path).code, 1);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("codes");
    std::ofstream(dir / "broken.json") << "{ \"schema\": 1, ";
    std::ofstream(dir / "wrong.json")
        << R"({"schema": 1, "name": "w", "base": {"elliptic": 5}, "steps": [], "expect": {"euler": 1}})";
    EXPECT_EQ(sh("run " + (dir / "broken.json").string()).code, 2);
    EXPECT_EQ(sh("run " + (dir / "wrong.json").string()).code, 1);
    EXPECT_EQ(sh("run " + (dir / "missing.json").string()).code, 2);
    EXPECT_EQ(sh("batch " + dir.string()).code, 2);
    fs::remove(dir / "broken.json");
    EXPECT_EQ(sh("batch " + dir.string()).code, 1);
    EXPECT_EQ(sh("batch " + (dir / "nope").string()).code, 2);
    EXPECT_EQ(sh("frobnicate").code, 2);
    EXPECT_EQ(sh("").code, 2);
    fs::remove_all(dir);
}

TEST(Cli, BatchCorpusDirectory) {
    const auto r = sh("batch -j 3 " + kCorpus.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("15 passed"), std::string::npos) << r.out;
}

TEST(Cli, CorpusMatchesDirectoryBatch) {
    const auto embedded = sh("--machine corpus");
    ASSERT_EQ(embedded.code, 0);
    const auto j = nlohmann::json::parse(embedded.out);
    EXPECT_NE(j.dump().find("I6I3I2_pencil"), std::string::npos);
    EXPECT_EQ(sh("corpus --machine -j 1").out, embedded.out);
}

TEST(Cli, Chart) {
    const auto dir = scratch("chart");
    const auto csv = dir / "g.csv";
    const auto svg = dir / "g.svg";
    const auto r = sh("chart " + kCorpus.string() + " --out " + csv.string() + " --svg " + svg.string());
    EXPECT_EQ(r.code, 0);
    const auto text = slurp(csv);
    EXPECT_EQ(text.rfind("name,chi_h,c1sq,position\n", 0), 0u);
    EXPECT_NE(text.find("X_noether,5,4,on_noether"), std::string::npos);
    EXPECT_NE(text.find("M_above,2,1,above_noether"), std::string::npos);
    EXPECT_NE(slurp(svg).find("</svg>"), std::string::npos);
    fs::remove_all(dir);
}
