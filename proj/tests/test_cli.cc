#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#ifndef DTW_BINARY
#error "DTW_BINARY must name the command-line tool"
#endif

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
};

// Runs the tool with the given argument string; stdout only.
Result run(const std::string& args) {
  const std::string cmd = std::string(DTW_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() /
                        ("dtw_cli_test_" + std::to_string(::getpid())));
    fs::create_directories(*dir_);
    const Result r = run("example tarasoff --out " + quote(dir_->string()));
    ASSERT_EQ(r.code, 0) << r.out;
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static std::string file(const std::string& name) {
    return quote((*dir_ / name).string());
  }

  static fs::path* dir_;
};

fs::path* Cli::dir_ = nullptr;

const char* kDead = "'Oct | poddar=1,parents=1,university=0 | dead'";

TEST_F(Cli, ExampleWritesBundle) {
  for (const char* f : {"tarasoff.game", "tarasoff2.game", "lemma3_a_b_p.prf",
                        "lemma6_n1_cited.prf", "lemma7_n2.prf"}) {
    EXPECT_TRUE(fs::exists(*dir_ / f)) << f;
  }
}

TEST_F(Cli, CheckBlameHolds) {
  const Result r = run("check " + file("tarasoff.game") + " " + kDead +
                    " 'B[university][parents] killed'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("parents=0"), std::string::npos) << r.out;
}

TEST_F(Cli, CheckBlameFails) {
  const Result r = run("check " + file("tarasoff.game") + " " + kDead +
                    " 'B[parents][parents] killed'");
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, CheckJson) {
  const Result r = run("check --json " + file("tarasoff.game") + " " + kDead +
                    " 'B[university][parents] killed'");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["holds"], true);
  EXPECT_EQ(j["witness"]["parents"], "0");
}

TEST_F(Cli, MalformedFormulaIsAnError) {
  std::string err;
  const std::string cmd = std::string(DTW_BINARY) + " check " + file("tarasoff.game") +
                          " " + kDead + " 'B[parents] killed' 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) err.append(buf.data(), n);
  const int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 2);
  EXPECT_NE(err.find("position"), std::string::npos) << err;
}

TEST_F(Cli, Valid) {
  EXPECT_EQ(run("valid " + file("tarasoff.game") + " 'K[parents] killed -> killed'").code, 0);
  EXPECT_EQ(run("valid " + file("tarasoff.game") + " killed").code, 1);
  EXPECT_EQ(run("valid /nonexistent/file.game killed").code, 2);
}

TEST_F(Cli, Prove) {
  const Result r = run("prove " + file("lemma3_a_b_p.prf"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("accepted"), std::string::npos) << r.out;
  EXPECT_EQ(run("prove " + file("lemma6_n1_cited.prf")).code, 1);
  EXPECT_EQ(run("prove " + file("lemma6_n1_cited.prf") + " --library " +
                quote(dir_->string())).code,
            0);
}

TEST_F(Cli, ProveRejectsMutatedScript) {
  std::ifstream in(*dir_ / "lemma5_a_p.prf");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  const auto pos = text.find("\n1. ");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 4, "~");
  std::ofstream(*dir_ / "mutated.prf") << text;
  const Result r = run("prove --json " + file("mutated.prf"));
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["accepted"], false);
  EXPECT_EQ(j["line"], 1);
}

TEST_F(Cli, Countermodel) {
  EXPECT_EQ(run("countermodel 'K[a,b]p -> K[a]p' --max-states 2 --max-agents 2").code, 1);
  EXPECT_EQ(run("countermodel 'K[a]p -> K[a,b]p'").code, 0);
}

TEST_F(Cli, Fuzz) {
  EXPECT_EQ(run("fuzz Truth --iters 50 --games 20 --seed 7").code, 0);
  EXPECT_EQ(run("fuzz Truth --iters 50").code, 2);  // no seed
  EXPECT_EQ(run("fuzz JointResponsibility-unrestricted --iters 100 --games 40 --seed 9").code, 1);
}

TEST_F(Cli, MinimalAndExpand) {
  EXPECT_EQ(run("minimal 1 " + file("tarasoff.game") + " " + kDead +
                " killed -C university -D parents").code,
            0);
  EXPECT_EQ(run("minimal 4 " + file("tarasoff.game") + " " + kDead +
                " killed -C '[university]'").code,
            0);
  const Result e = run("expand 1 p -C a -D d -U a,d");
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("B[a][d] p"), std::string::npos) << e.out;
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> commands = {"countermodel 'B[a][b]p -> K[a]p' --json",
        "fuzz JointResponsibility-unrestricted --iters 100 --games 40 --seed 9 --json",
        "countermodel 'K[a,b]p -> K[a]p' --random --seed 3 --iters 200",
      "prove --json " + file("lemma7_n2.prf")};
  for (const std::string& args : commands) {
    const Result a = run(args);
    const Result b = run(args);
    EXPECT_EQ(a.code, b.code) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST_F(Cli, BadUsage) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("minimal 7 " + file("tarasoff.game") + " " + kDead + " killed -C a").code, 2);
}

}  // namespace
