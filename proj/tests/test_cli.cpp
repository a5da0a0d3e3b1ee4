#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" MFIB_CLI_PATH "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return "\"" MFIB_DATA_DIR "/" + name + "\""; }

std::map<std::string, std::string> parse_lines(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find(": ");
    if (pos != std::string::npos) kv[line.substr(0, pos)] = line.substr(pos + 2);
  }
  return kv;
}

}  // namespace

TEST(Cli, ExitCodeTable) {
  const std::string bad_word = std::string(MFIB_BINARY_DIR) + "/bad.word";
  {
    FILE* f = std::fopen(bad_word.c_str(), "w");
    ASSERT_NE(f, nullptr);
    std::fputs("genus 2\nq 7\n", f);
    std::fclose(f);
  }
  const std::vector<std::pair<std::string, int>> cases{
      {"relcheck " + data("u1u1.word"), 0},
      {"relcheck " + data("u1.word"), 1},
      {"relcheck \"" + bad_word + "\"", 2},
      {"relcheck " + data("missing.word"), 2},
      {"invariants " + data("x0.fact"), 0},
      {"invariants " + data("x0.diagram"), 2},
      {"cover " + data("x0.fact") + " " + data("x0.diagram"), 0},
      {"cover " + data("trivial.fact") + " " + data("trivial.diagram"), 0},
      {"cover " + data("x0.fact") + " " + data("trivial.diagram"), 1},
      {"cover " + data("x0.fact") + " " + data("x0.fact"), 2},
      {"examples x0", 0},
      {"examples x1", 0},
      {"examples x2", 2},
      {"localmodel verify --eps 0", 2},
      {"localmodel verify --eps 0.5", 2},
      {"localmodel verify --grid 64 --tol 1e-14", 1},
      {"localmodel bogus", 2},
      {"localmodel plot --out /proc/mfib-denied", 2},
      {"", 2},
      {"--no-such-flag examples x0", 2},
  };
  for (const auto& [args, code] : cases) EXPECT_EQ(run(args).code, code) << "mfib " << args;
  std::remove(bad_word.c_str());
}

TEST(Cli, BadSeedEnvironment) {
  EXPECT_EQ(run("localmodel verify", "MFIB_SEED=abc").code, 2);
}

TEST(Cli, RelcheckOutput) {
  const auto kv = parse_lines(run("relcheck " + data("u1u1.word")).out);
  EXPECT_EQ(kv.at("identity"), "yes");
  EXPECT_EQ(kv.at("scope"), "mod-2 necessary condition");
  EXPECT_EQ(parse_lines(run("relcheck " + data("u1.word")).out).at("identity"), "no");
}

TEST(Cli, TrivialCover) {
  const auto kv = parse_lines(run("cover " + data("trivial.fact") + " " + data("trivial.diagram")).out);
  EXPECT_EQ(kv.at("betti"), "1,2,2,2,1");
  EXPECT_EQ(kv.at("h1"), "Z^2");
}

TEST(Cli, JsonMatchesText) {
  for (const std::string args : {"invariants " + data("x0.fact"), "cover " + data("x0.fact") + " " + data("x0.diagram"),
                                 std::string("examples x1")}) {
    const auto text = parse_lines(run(args).out);
    const auto js = nlohmann::json::parse(run("--json " + args).out);
    ASSERT_TRUE(js.is_object()) << args;
    EXPECT_EQ(js.size(), text.size()) << args;
    for (const auto& [key, value] : js.items()) {
      ASSERT_TRUE(text.count(key)) << args << " missing " << key;
      if (value.is_string()) EXPECT_EQ(value.get<std::string>(), text.at(key)) << key;
      else if (value.is_boolean()) EXPECT_EQ(value.get<bool>() ? "yes" : "no", text.at(key)) << key;
      else if (value.is_number_integer()) EXPECT_EQ(std::to_string(value.get<long long>()), text.at(key)) << key;
    }
  }
}

TEST(Cli, ExamplesDeterministic) {
  const auto a = run("examples x0"), b = run("examples x0");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse_lines(a.out).at("h1"), "Z/2");
  EXPECT_EQ(parse_lines(run("examples x1").out).at("h1"), "Z + Z/2");
}

TEST(Cli, SeedOptionAndEnvironmentAgree) {
  const auto a = run("localmodel verify --grid 64 --seed 7");
  const auto b = run("localmodel verify --grid 64", "MFIB_SEED=7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
