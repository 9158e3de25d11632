#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "diffuse/cli.hpp"
#include "fixtures.hpp"

using namespace diffuse;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "diffuse");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("diffuse_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string l6() { return file("l6.poly", "n 6\n0 0\n2 0\n2 1\n1 1\n1 2\n0 2\ns 3/2 1/4\n"); }
  std::string generated(const std::string& family, const std::string& n, const std::string& seed = "1") {
    const std::string out = path(family + n + ".poly");
    EXPECT_EQ(run({"generate", family, n, out, "--seed", seed}).code, 0);
    return out;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, IlluminateL6) {
  const auto r = run({"illuminate", l6(), "--source", "3/2", "1/4", "--ledger", path("l.json"), "--assert"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = parse_ledger(slurp(path("l.json")));
  EXPECT_EQ(doc.terminated_at, 1u);
  EXPECT_EQ(doc.bound_k, 2u);
}

TEST_F(Cli, IlluminateLedgerOnStdout) {
  const auto r = run({"illuminate", l6()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_ledger(r.out).terminated_at, 1u);
}

TEST_F(Cli, IlluminateSvg) {
  EXPECT_EQ(run({"illuminate", l6(), "--svg", path("l6.svg"), "--ledger", path("l.json")}).code, 0);
  const auto svg = slurp(path("l6.svg"));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("id=\"R1\""), std::string::npos);
}

TEST_F(Cli, IlluminateZigzag) {
  const auto r = run({"illuminate", generated("zigzag", "16"), "--ledger", path("z.json"), "--assert"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_ledger(slurp(path("z.json"))).terminated_at, 7u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"illuminate", file("bow.poly", "n 4\n0 0\n1 1\n1 0\n0 1\n"), "--source", "1/2", "1/4"}).code, 3);
  EXPECT_EQ(run({"illuminate", path("missing.poly"), "--source", "1", "1"}).code, 2);
  EXPECT_EQ(run({"illuminate", file("bad.poly", "n 3\n0 0\n1 x\n0 1\n"), "--source", "1", "1"}).code, 2);
  EXPECT_EQ(run({"illuminate", l6(), "--source", "3/2", "3/2"}).code, 3);
  EXPECT_EQ(run({"illuminate", file("sq.poly", "n 4\n0 0\n1 0\n1 1\n0 1\n"), "--source", "1/2", "1/2"}).code, 3);
  EXPECT_EQ(run({"illuminate", file("nos.poly", "n 4\n0 0\n1 0\n1 1\n0 1\n")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(Cli, PathL6) {
  auto r = run({"path", l6(), "--target", "1/2", "1/2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("reflections: 0\n", 0), 0u) << r.out;
  r = run({"path", l6(), "--target", "9/10", "19/10", "--svg", path("p.svg")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("reflections: 1\n", 0), 0u) << r.out;
  EXPECT_NE(slurp(path("p.svg")).find("id=\"path\""), std::string::npos);
}

TEST_F(Cli, PathErrors) {
  const auto chord = run({"path", l6(), "--target", "2/3", "3/2"});
  EXPECT_EQ(chord.code, 5);
  EXPECT_NE(chord.err.find("perturb"), std::string::npos) << chord.err;
  EXPECT_EQ(run({"path", l6(), "--target", "3/2", "3/2"}).code, 3);
  EXPECT_EQ(run({"path", l6(), "--target", "0", "1"}).code, 3);
  EXPECT_EQ(run({"path", l6()}).code, 2);
}

TEST_F(Cli, PathZigzag) {
  const auto r = run({"path", generated("zigzag", "16")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("reflections: 7\n", 0), 0u) << r.out;
}

TEST_F(Cli, Generate) {
  auto f = parse_polygon_file(slurp(generated("zigzag", "16")));
  EXPECT_EQ(f.vertices.size(), 16u);
  EXPECT_TRUE(f.source && f.target);
  f = parse_polygon_file(slurp(generated("convex", "7", "1")));
  EXPECT_TRUE(validate_polygon(f.polygon()).ok());
  EXPECT_TRUE(f.source.has_value());
  EXPECT_EQ(parse_polygon_file(slurp(generated("spiral", "20"))).vertices.size(), 20u);
  const auto out = run({"generate", "random", "9", "-", "--seed", "3"});
  EXPECT_EQ(out.code, 0);
  EXPECT_EQ(parse_polygon_file(out.out).vertices.size(), 9u);
}

TEST_F(Cli, GenerateErrors) {
  EXPECT_EQ(run({"generate", "zigzag", "7", path("z.poly")}).code, 2);
  EXPECT_EQ(run({"generate", "spiral", "14", path("s.poly")}).code, 2);
  EXPECT_EQ(run({"generate", "star", "10", path("s.poly")}).code, 2);
  EXPECT_EQ(run({"generate", "convex", "2", path("c.poly")}).code, 2);
}

TEST_F(Cli, VerifyConvex) {
  const auto r = run({"verify", generated("convex", "12"), "--samples", "10"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("terminated_at=0"), std::string::npos);
  EXPECT_NE(r.out.find("verify: PASS"), std::string::npos);
}

TEST_F(Cli, VerifyRandom) {
  const auto r = run({"verify", generated("random", "20", "7"), "--samples", "10"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto pos = r.out.find("terminated_at=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LE(std::stoul(r.out.substr(pos + 14)), 9u);
}

TEST_F(Cli, VerifyZigzag) {
  const auto r = run({"verify", generated("zigzag", "16"), "--samples", "3", "--oracle-m", "64"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("terminated_at=7"), std::string::npos);
  EXPECT_NE(r.out.find("designated target: reflections 7"), std::string::npos) << r.out;
}

TEST_F(Cli, VerifyOutputsAreDeterministic) {
  const auto poly = generated("random", "14", "5");
  std::string ledger[2], paths[2], svg[2], out[2];
  for (int i = 0; i < 2; ++i) {
    const auto tag = std::to_string(i);
    const auto r = run({"verify", poly, "--samples", "8", "--ledger", path("l" + tag), "--paths", path("p" + tag),
                        "--svg", path("s" + tag)});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    ledger[i] = slurp(path("l" + tag));
    paths[i] = slurp(path("p" + tag));
    svg[i] = slurp(path("s" + tag));
    out[i] = r.out;
  }
  EXPECT_EQ(ledger[0], ledger[1]);
  EXPECT_EQ(paths[0], paths[1]);
  EXPECT_EQ(svg[0], svg[1]);
  EXPECT_EQ(out[0], out[1]);
  EXPECT_FALSE(paths[0].empty());
}
