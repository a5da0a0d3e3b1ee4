#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfib/local/svg.hpp"

using namespace mfib;
using namespace mfib::local;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NumericConfig small_config() {
  NumericConfig cfg;
  cfg.grid = 64;
  return cfg;
}

}  // namespace

TEST(Svg, GammaIsDeterministicWithCuspMarkers) {
  const auto cfg = small_config();
  const auto a = render_svg(Artifact::Gamma, cfg);
  EXPECT_EQ(a, render_svg(Artifact::Gamma, cfg));
  EXPECT_EQ(a.rfind("<svg", 0), 0u);
  std::size_t markers = 0;
  for (auto pos = a.find("fill=\"red\""); pos != std::string::npos; pos = a.find("fill=\"red\"", pos + 1)) ++markers;
  EXPECT_EQ(markers, 3u);
  EXPECT_NE(a.find("<polygon"), std::string::npos);
}

TEST(Svg, NumbersHaveFourDecimals) {
  const auto s = render_svg(Artifact::Fiber, small_config());
  const auto pos = s.find("cx=\"");
  ASSERT_NE(pos, std::string::npos);
  const auto end = s.find('"', pos + 4);
  const auto num = s.substr(pos + 4, end - pos - 4);
  EXPECT_EQ(num.size() - num.find('.') - 1, 4u);
}

TEST(Svg, WritesAllArtifacts) {
  const auto dir = std::filesystem::temp_directory_path() / "mfib_svg_test";
  std::filesystem::remove_all(dir);
  const auto paths = render_svgs({Artifact::Gamma, Artifact::Attach, Artifact::Fiber}, dir, small_config());
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(paths[0].filename(), "gamma.svg");
  EXPECT_EQ(paths[1].filename(), "attach.svg");
  EXPECT_EQ(paths[2].filename(), "fiber.svg");
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
  EXPECT_EQ(slurp(paths[1]), render_svg(Artifact::Attach, small_config()));
  std::filesystem::remove_all(dir);
}

TEST(Svg, EmptyListIsAnError) {
  EXPECT_THROW(render_svgs({}, std::filesystem::temp_directory_path(), small_config()), InvalidArgument);
}

TEST(Svg, UnwritablePathIsAnError) {
  EXPECT_THROW(write_svg(Artifact::Fiber, "/nonexistent-dir/x/fiber.svg", small_config()), IoError);
}
