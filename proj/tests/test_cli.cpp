#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zol/cli.hpp"

namespace fs = std::filesystem;

namespace {

fs::path golden_dir() {
  const char* dir = std::getenv("ZOL_GOLDEN_DIR");
  return dir ? fs::path(dir) : fs::path("tests/golden");
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

// "{G}" in an argument stands for the golden directory.
Outcome run(std::vector<std::string> args) {
  for (auto& a : args) {
    for (auto pos = a.find("{G}"); pos != std::string::npos; pos = a.find("{G}")) a.replace(pos, 3, golden_dir().string());
  }
  std::ostringstream out, err;
  const int code = zol::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
};

const char* const kEdge = "exists x. exists y. S(x,y)";

std::vector<GoldenCase> golden_cases() {
  return {
      {"fraction_exact", {"fraction", "--gen", "z", "--center", "0", "--n", "2", "--phi", kEdge, "--mode", "exact"}},
      {"fraction_mc",
       {"fraction", "--gen", "z", "--n", "3", "--phi", kEdge, "--mode", "mc", "--samples", "20000", "--seed", "7"}},
      {"fraction_structure", {"fraction", "--structure", "{G}/host.json", "--phi", "exists x. exists y. E(x,y)"}},
      {"tree_fixpoint", {"tree-fixpoint", "--k", "2", "--p", "0.75"}},
      {"tree_fixpoint_tangential", {"tree-fixpoint", "--k", "2", "--p", "1/2"}},
      {"tree_mc", {"tree-mc", "--k", "2", "--p", "3/4", "--depth", "12", "--samples", "5000", "--seed", "1"}},
      {"forest_count", {"forest-count", "--n-max", "12"}},
      {"trajectory_exact", {"trajectory", "--gen", "z", "--phi", kEdge, "--n-max", "4"}},
      {"trajectory_mc_json",
       {"trajectory", "--gen", "tree:2", "--center", "", "--center", "11", "--phi", "exists x. exists y. C(x,y)",
        "--n-max", "3", "--mode", "mc", "--samples", "4000", "--seed", "5", "--format", "json"}},
      {"trajectory_two_centers",
       {"trajectory", "--gen", "uutree", "--center", "0", "--center", "9", "--phi", "exists x. exists y. L1(x,y)",
        "--n-max", "2"}},
      {"ef_isomorphic", {"ef", "--a", "{G}/p2.json", "--b", "{G}/p2_flipped.json", "--n", "2"}},
      {"ef_p2_k1", {"ef", "--a", "{G}/p2.json", "--b", "{G}/k1.json", "--n", "2"}},
      {"embed_host", {"embed", "--host", "{G}/host.json", "--pattern", "{G}/p2.json", "--closed"}},
      {"embed_gen", {"embed", "--gen", "z", "--pattern", "{G}/z_p3.json"}},
      {"eval_file", {"eval", "--gen", "z", "--center", "0", "--n", "2", "--phi", "@{G}/edge.fo"}},
      {"eval_assign", {"eval", "--structure", "{G}/host.json", "--phi", "E(x,y)", "--assign", "x=1", "--assign", "y=0"}},
      {"ball_tree", {"ball", "--gen", "tree:2", "--center", "", "--n", "2"}},
      {"ball_grid_two_centers", {"ball", "--gen", "grid2", "--center", "0,0", "--center", "3,0", "--n", "1"}},
      {"representatives_monoid", {"representatives", "--gen", "monoid:2", "--n", "1"}},
      {"sigma_axioms", {"sigma-axioms", "--gen", "z", "--max-size", "2"}},
      {"strategy_demo", {"strategy-demo", "--gen", "z", "--n", "2", "--pick", "a:0", "--pick", "b:40"}},
      {"closed_copy", {"closed-copy", "--gen", "z", "--radius", "2", "--samples", "20000", "--seed", "3", "--exact"}},
      {"percolate", {"percolate", "--gen", "grid2", "--n", "2", "--p", "1/2", "--seed", "9"}},
      {"density_check", {"density-check", "--gen", "z", "--m", "2"}},
  };
}

}  // namespace

TEST(Golden, OutputsMatchPinnedFiles) {
  const bool update = std::getenv("ZOL_UPDATE_GOLDEN") != nullptr;
  for (const GoldenCase& c : golden_cases()) {
    const Outcome o = run(c.args);
    EXPECT_EQ(o.code, 0) << c.name << ": " << o.err;
    const fs::path file = golden_dir() / (std::string(c.name) + ".out");
    if (update) {
      std::ofstream(file, std::ios::binary) << o.out;
      continue;
    }
    ASSERT_TRUE(fs::exists(file)) << file;
    EXPECT_EQ(o.out, slurp(file)) << c.name;
  }
}

TEST(Golden, DocumentedValues) {
  const auto frac = zol::Json::parse(run(golden_cases()[0].args).out);
  EXPECT_EQ(frac["fraction"], "19/32");
  EXPECT_EQ(frac["value"], 0.59375);
  const auto fix = zol::Json::parse(run({"tree-fixpoint", "--k", "2", "--p", "0.75"}).out);
  EXPECT_NEAR(fix["infinite_path_prob"].get<double>(), 2.0 / 3.0, 1e-9);
  const auto ef = zol::Json::parse(run({"ef", "--a", "{G}/p2.json", "--b", "{G}/p2_flipped.json", "--n", "2"}).out);
  EXPECT_EQ(ef["equivalent"], true);
}

TEST(Cli, BallRoundTrip) {
  const fs::path file = fs::temp_directory_path() / "zol_ball_round_trip.json";
  const Outcome o = run({"ball", "--gen", "tree:2", "--center", "", "--n", "2", "--out", file.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  const std::string text = slurp(file);
  const zol::BallPatch patch = zol::load_patch(file.string());
  EXPECT_EQ(patch.vertices.size(), 7u);
  EXPECT_EQ(zol::to_json(patch).dump(2) + "\n", text);
  EXPECT_EQ(text, run({"ball", "--gen", "tree:2", "--center", "", "--n", "2"}).out);
  fs::remove(file);
}

TEST(Cli, ValidationErrorsExitTwo) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"ball", "--gen", "torus", "--n", "1"}, "argument error:"},
      {{"ball", "--gen", "z", "--center", "01", "--n", "1"}, "argument error:"},
      {{"nonsense"}, "argument error:"},
      {{"ball", "--gen", "z"}, "argument error:"},
      {{"fraction", "--gen", "z", "--n", "2", "--phi", "exists x."}, "parse error:"},
      {{"fraction", "--gen", "z", "--n", "2", "--phi", "E(x,x)"}, "eval error:"},
      {{"fraction", "--gen", "z", "--n", "2", "--phi", "true", "--mode", "mc"}, "argument error:"},
      {{"tree-mc", "--k", "2", "--p", "0.5", "--depth", "3"}, "argument error:"},
      {{"closed-copy", "--gen", "z", "--radius", "2"}, "argument error:"},
      {{"percolate", "--gen", "z", "--n", "2"}, "argument error:"},
      {{"tree-fixpoint", "--k", "2", "--p", "1.5"}, "argument error:"},
      {{"ef", "--a", "{G}/missing.json", "--b", "{G}/k1.json", "--n", "1"}, "format error:"},
      {{"ef", "--a", "{G}/edge.fo", "--b", "{G}/k1.json", "--n", "1"}, "format error:"},
      {{"strategy-demo", "--gen", "z", "--n", "1", "--pick", "c:0"}, "argument error:"},
      {{"strategy-demo", "--gen", "z", "--n", "1", "--pick", "a:0", "--pick", "a:1"}, "argument error:"},
  };
  for (const auto& [args, prefix] : cases) {
    const Outcome o = run(args);
    EXPECT_EQ(o.code, 2) << args[0] << " " << o.err;
    EXPECT_EQ(o.err.rfind(prefix, 0), 0u) << o.err;
    EXPECT_TRUE(o.out.empty());
  }
}

TEST(Cli, GuardAndBudgetErrorsExitThree) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"fraction", "--gen", "z", "--n", "13", "--phi", "true"}, "guard error:"},
      {{"trajectory", "--gen", "grid2", "--phi", "true", "--n-max", "4"}, "guard error:"},
      {{"strategy-demo", "--gen", "z", "--n", "2", "--pick", "a:0", "--pick", "a:90", "--radius-cap", "2"},
       "budget error:"},
      {{"strategy-demo", "--gen", "z", "--n", "5", "--pick", "a:0"}, "guard error:"},
  };
  for (const auto& [args, prefix] : cases) {
    const Outcome o = run(args);
    EXPECT_EQ(o.code, 3) << args[0] << " " << o.err;
    EXPECT_EQ(o.err.rfind(prefix, 0), 0u) << o.err;
  }
}

TEST(Cli, HelpExitsZero) {
  const Outcome o = run({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("trajectory"), std::string::npos);
}

TEST(Cli, OutputDoesNotDependOnThreads) {
  const std::vector<std::vector<std::string>> commands = {
      {"fraction", "--gen", "z", "--n", "4", "--phi", kEdge, "--mode", "mc", "--samples", "30000", "--seed", "2"},
      {"fraction", "--gen", "z", "--n", "6", "--phi", kEdge},
      {"tree-mc", "--k", "3", "--p", "0.4", "--depth", "8", "--samples", "30000", "--seed", "4"},
      {"closed-copy", "--gen", "z", "--radius", "3", "--samples", "30000", "--seed", "6"},
      {"trajectory", "--gen", "z", "--phi", kEdge, "--n-max", "5", "--mode", "mc", "--samples", "9000", "--seed", "8"},
  };
  for (const auto& cmd : commands) {
    std::string first;
    for (const char* t : {"1", "3", "8"}) {
      std::vector<std::string> args{"--threads", t};
      args.insert(args.end(), cmd.begin(), cmd.end());
      const Outcome o = run(args);
      ASSERT_EQ(o.code, 0) << o.err;
      if (first.empty()) first = o.out;
      EXPECT_EQ(o.out, first) << cmd[0] << " threads=" << t;
    }
  }
}
