#include <gtest/gtest.h>

#include <random>

#include "zol/strategy.hpp"

using namespace zol;

namespace {

struct Pick {
  Side side;
  VertexId id;
};

// Plays the scripted picks and re-verifies the state after every move.
std::vector<StrategyMove> play(const AmbientGenerator& x, const AmbientGenerator& x2, std::size_t n,
                               const std::vector<Pick>& picks) {
  StrategyState state;
  state.n = n;
  std::vector<StrategyMove> moves;
  for (const Pick& p : picks) {
    StrategyMove m = duplicator_strategy_move(x, x2, state, p.side, p.id);
    const StateCheck check = verify_strategy_state(x, x2, m.state);
    EXPECT_TRUE(check.ok) << check.detail;
    EXPECT_EQ(m.state.radius() * 5, state.radius());
    state = m.state;
    moves.push_back(std::move(m));
  }
  return moves;
}

PartialMap shift_map(const std::vector<Element>& domain, long shift) {
  PartialMap m;
  for (Element v : domain) m.insert(v, static_cast<Element>(static_cast<long>(v) + shift));
  return m;
}

}  // namespace

TEST(Strategy, IdentityGameAnswersWithTheSameVertex) {
  const ZLine z;
  const auto moves = play(z, z, 2, {{Side::A, "0"}, {Side::A, "2"}});
  EXPECT_EQ(moves[0].response, "0");
  EXPECT_EQ(moves[1].branch, Branch::Restriction);
  EXPECT_EQ(moves[1].response, "2");
  for (const auto& [a, b] : moves[1].state.alpha) EXPECT_EQ(a, b);
}

TEST(Strategy, NearAndFarPicksOnTheLine) {
  const ZLine z;
  const auto moves = play(z, z, 2, {{Side::A, "7"}, {Side::A, "40"}});
  EXPECT_EQ(moves[0].branch, Branch::DisjointBall);
  EXPECT_EQ(moves[0].state.radius(), 5u);
  EXPECT_EQ(moves[0].state.alpha.size(), 11u);
  EXPECT_EQ(moves[1].branch, Branch::DisjointBall);
  EXPECT_EQ(moves[1].state.radius(), 1u);
  // The response ball must avoid alpha(B_1(F)) and its neighbours.
  const long first = ZLine::coord(moves[0].response);
  const long second = ZLine::coord(moves[1].response);
  EXPECT_GE(std::labs(second - first), 4);
}

TEST(Strategy, RestrictionNearEarlierPicks) {
  const ZLine z;
  const auto moves = play(z, z, 2, {{Side::A, "100"}, {Side::A, "103"}});
  EXPECT_EQ(moves[1].branch, Branch::Restriction);
  EXPECT_EQ(ZLine::coord(moves[1].response) - ZLine::coord(moves[0].response), 3);
}

TEST(Strategy, SpoilerMayPickInEitherStructure) {
  const GridZ2 grid;
  const auto moves = play(grid, grid, 2, {{Side::B, "9,-4"}, {Side::A, "-30,2"}});
  EXPECT_EQ(moves[0].state.picks[0].second, "9,-4");
  EXPECT_EQ(moves[1].state.picks[1].first, "-30,2");
}

TEST(Strategy, RandomGamesKeepTheInvariant) {
  std::mt19937_64 rng(7);
  const ZLine z;
  const GridZ2 grid;
  const KaryTree tree(2);
  for (int game = 0; game < 12; ++game) {
    std::vector<Pick> picks;
    const std::size_t n = game % 3 == 0 ? 3 : 2;
    for (std::size_t i = 0; i < n; ++i) {
      const Side side = rng() % 2 ? Side::A : Side::B;
      const long a = static_cast<long>(rng() % 80) - 40;
      picks.push_back({side, std::to_string(a)});
    }
    play(z, z, n, picks);
  }
  for (int game = 0; game < 6; ++game) {
    std::vector<Pick> grid_picks, tree_picks;
    for (int i = 0; i < 2; ++i) {
      const Side side = rng() % 2 ? Side::A : Side::B;
      grid_picks.push_back({side, GridZ2::id(static_cast<long>(rng() % 60) - 30, static_cast<long>(rng() % 60) - 30)});
      std::string w(rng() % 8, '1');
      for (char& c : w) c = static_cast<char>('1' + rng() % 2);
      tree_picks.push_back({side, w});
    }
    play(grid, grid, 2, grid_picks);
    play(tree, tree, 2, tree_picks);
  }
}

TEST(Strategy, Errors) {
  const ZLine z;
  StrategyState state;
  state.n = 2;
  EXPECT_THROW(duplicator_strategy_move(z, z, state, Side::A, "x"), ArgumentError);
  const StrategyState after = duplicator_strategy_move(z, z, state, Side::A, "0", 2).state;
  EXPECT_THROW(duplicator_strategy_move(z, z, after, Side::A, "80", 2), BudgetError);
  StrategyState done = after;
  done.i = 2;
  EXPECT_THROW(duplicator_strategy_move(z, z, done, Side::A, "0"), ArgumentError);
  StrategyState deep;
  deep.n = 5;
  EXPECT_THROW(duplicator_strategy_move(z, z, deep, Side::A, "0"), GuardError);
  EXPECT_THROW(duplicator_strategy_move(z, GridZ2(), state, Side::A, "0"), ArgumentError);
  StrategyState wide;
  wide.n = 3;
  EXPECT_THROW(duplicator_strategy_move(KaryTree(2), KaryTree(2), wide, Side::A, ""), BudgetError);
}

TEST(Strategy, VerificationRejectsBrokenStates) {
  const ZLine z;
  StrategyState state;
  state.n = 2;
  StrategyState s = duplicator_strategy_move(z, z, state, Side::A, "0").state;
  s.alpha["1"] = "2";
  EXPECT_FALSE(verify_strategy_state(z, z, s).ok);
  s = duplicator_strategy_move(z, z, state, Side::A, "0").state;
  s.alpha.erase("5");
  EXPECT_FALSE(verify_strategy_state(z, z, s).ok);
}

TEST(BallIsoProps, IdentityAndTranslation) {
  const Structure line = ball_of(ZLine(), "0", 10).structure;  // local 10 is vertex 0
  const auto y = SubsetMask::of(line.size(), {10});
  const std::vector<Element> dom{8, 9, 10, 11, 12};
  for (long shift : {0L, 3L, -5L}) {
    const auto report = check_ball_iso_props(line, y, 2, shift_map(dom, shift), line);
    ASSERT_EQ(report.size(), 4u);
    for (const auto& c : report) EXPECT_EQ(c.pass, std::optional<bool>(true)) << c.claim << " " << shift;
  }
}

TEST(BallIsoProps, NonOntoMapLeavesClaimFourOpen) {
  const Structure line = ball_of(ZLine(), "0", 10).structure;
  const auto y = SubsetMask::of(line.size(), {0});  // an end of the path
  const auto report = check_ball_iso_props(line, y, 1, shift_map({0, 1}, 5), line);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(report[c].pass, std::optional<bool>(true));
  EXPECT_FALSE(report[3].pass.has_value());
  EXPECT_TRUE(report[3].witness.contains("reason"));
}

TEST(BallIsoProps, HoldForEmbeddedBalls) {
  std::mt19937_64 rng(23);
  const GridZ2 grid;
  const BallPatch host = ball_of(grid, grid.base_point(), 9);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 2;
    std::vector<VertexId> ys{GridZ2::id(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3)};
    if (rng() % 2) ys.push_back(GridZ2::id(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3));
    std::vector<Element> ylocal;
    for (const auto& v : ys) ylocal.push_back(*host.local_index(v));
    const SubsetMask y = SubsetMask::of(host.structure.size(), ylocal);
    const auto dom = ball(host.structure, y, n).members();
    const Structure b = pullback(host.structure, dom);
    // Any embedding of the ball, not only translations.
    const auto embs = find_embeddings(b, host.structure, 40);
    ASSERT_FALSE(embs.empty());
    const Embedding& e = embs[rng() % embs.size()];
    PartialMap alpha;
    for (std::size_t i = 0; i < dom.size(); ++i) alpha.insert(dom[i], e.image[i]);
    for (const auto& c : check_ball_iso_props(host.structure, y, n, alpha, host.structure)) {
      EXPECT_NE(c.pass, std::optional<bool>(false)) << c.claim << " " << to_json(c).dump();
    }
  }
}

TEST(BallIsoProps, PreconditionsAreChecked) {
  const Structure line = ball_of(ZLine(), "0", 4).structure;
  const auto y = SubsetMask::of(line.size(), {4});
  EXPECT_THROW(check_ball_iso_props(line, y, 1, shift_map({3, 4}, 1), line), ArgumentError);
  PartialMap flip({{3, 5}, {4, 4}, {5, 2}});
  EXPECT_THROW(check_ball_iso_props(line, y, 1, flip, line), ArgumentError);
  EXPECT_THROW(check_ball_iso_props(line, SubsetMask(line.size()), 1, PartialMap(), line), ArgumentError);
}
