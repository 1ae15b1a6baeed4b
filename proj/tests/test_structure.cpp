#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "zol/structure.hpp"
#include "zol/structure_io.hpp"

using namespace zol;

namespace {

const Vocabulary kE({{"E", 2}});

Structure path(std::size_t n) {
  StructureBuilder b(kE, n);
  for (Element i = 0; i + 1 < n; ++i) b.add("E", {i, i + 1});
  return b.build();
}

}  // namespace

TEST(Vocabulary, RejectsBadSymbols) {
  EXPECT_THROW(Vocabulary({{"E", 0}}), ArgumentError);
  EXPECT_THROW(Vocabulary({{"", 2}}), ArgumentError);
  EXPECT_THROW(Vocabulary({{"E", 2}, {"E", 1}}), ArgumentError);
  EXPECT_THROW(Vocabulary({{"1E", 2}}), ArgumentError);
}

TEST(Structure, ValidatesAndDeduplicates) {
  EXPECT_THROW(Structure(kE, 2, {{{0, 2}}}), ArgumentError);
  EXPECT_THROW(Structure(kE, 2, {{{0}}}), ArgumentError);
  Structure s(kE, 2, {{{0, 1}, {0, 1}}});
  EXPECT_EQ(s.tuples("E").size(), 1u);
  const Structure empty(kE, 0);
  EXPECT_EQ(empty.size(), 0u);
  EXPECT_EQ(max_degree(empty), 0u);
  EXPECT_TRUE(components(empty).empty());
}

TEST(Gaifman, TernaryTupleGivesTriangle) {
  const Vocabulary v({{"R", 3}});
  const Structure s(v, 3, {{{0, 1, 2}}});
  const auto g = gaifman(s);
  EXPECT_EQ(g.edges(), (std::vector<std::pair<Element, Element>>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(max_degree(s), 2u);
}

TEST(Gaifman, LoopsGiveNoEdges) {
  const Structure s(kE, 1, {{{0, 0}}});
  EXPECT_EQ(gaifman(s).edge_count(), 0u);
}

TEST(Gaifman, PathEdges) {
  EXPECT_EQ(gaifman(path(5)).edges(), (std::vector<std::pair<Element, Element>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  EXPECT_EQ(max_degree(path(5)), 2u);
}

TEST(Distance, PathAndComponents) {
  const auto g = gaifman(path(5));
  EXPECT_EQ(distance(g, 0, 4), Distance::finite(4));
  EXPECT_EQ(distance(g, 3, 3), Distance::finite(0));
  const auto g2 = gaifman(disjoint_union(path(2), path(2)));
  EXPECT_TRUE(distance(g2, 0, 3).is_infinite());
  EXPECT_LT(Distance::finite(1000), Distance::infinite());
  EXPECT_THROW(distance(g, 0, 5), ArgumentError);
}

TEST(Ball, PathExamples) {
  const Structure p = path(5);
  EXPECT_EQ(ball(p, SubsetMask::of(5, {2}), 1).members(), (std::vector<Element>{1, 2, 3}));
  EXPECT_EQ(ball(p, SubsetMask::of(5, {0}), 2).members(), (std::vector<Element>{0, 1, 2}));
  EXPECT_EQ(ball(p, SubsetMask::of(5, {3}), 0).members(), (std::vector<Element>{3}));
  EXPECT_THROW(ball(p, SubsetMask(5), 1), ArgumentError);
}

TEST(Induced, Examples) {
  const Structure p = path(5);
  const auto sparse = induced(p, SubsetMask::of(5, {0, 2, 4}));
  EXPECT_EQ(sparse.structure.size(), 3u);
  EXPECT_EQ(sparse.structure.tuple_count(), 0u);
  EXPECT_EQ(sparse.to_parent, (std::vector<Element>{0, 2, 4}));
  EXPECT_EQ(induced(p, SubsetMask::full(5)).structure, p);
  EXPECT_EQ(induced(p, SubsetMask(5)).structure.size(), 0u);
}

TEST(Components, Examples) {
  const auto c = components(disjoint_union(path(2), path(1)));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].count(), 2u);
  EXPECT_EQ(c[1].count(), 1u);
  EXPECT_EQ(components(path(5)).size(), 1u);
}

TEST(DisjointUnion, Examples) {
  const Structure u = disjoint_union(path(2), path(2));
  EXPECT_EQ(u.size(), 4u);
  EXPECT_EQ(gaifman(u).edge_count(), 2u);
  EXPECT_EQ(components(u).size(), 2u);
  EXPECT_EQ(disjoint_union(Structure(kE, 0), path(3)), path(3));
  EXPECT_THROW(disjoint_union(path(2), Structure(Vocabulary({{"F", 2}}), 1)), ArgumentError);
}

TEST(StructureProperties, RandomStructures) {
  std::mt19937_64 rng(7);
  const Vocabulary v({{"E", 2}, {"T", 3}});
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t na = 1 + rng() % 6, nb = rng() % 5;
    const Structure a = oracle::random_structure(rng, v, na, 0.08);
    const Structure b = oracle::random_structure(rng, v, nb, 0.08);
    const Structure u = disjoint_union(a, b);
    const auto g = gaifman(u);
    for (Element x = 0; x < na; ++x) {
      for (Element y = static_cast<Element>(na); y < u.size(); ++y) EXPECT_FALSE(g.adjacent(x, y));
    }
    EXPECT_EQ(components(u).size(), components(a).size() + components(b).size());

    // Distances agree with Floyd-Warshall.
    const auto d = oracle::all_pairs_distances(u);
    for (Element x = 0; x < u.size(); ++x) {
      for (Element y = 0; y < u.size(); ++y) {
        const Distance dd = distance(g, x, y);
        if (d[x][y] >= (1 << 20)) {
          EXPECT_TRUE(dd.is_infinite());
        } else {
          EXPECT_EQ(dd, Distance::finite(static_cast<std::size_t>(d[x][y])));
        }
      }
    }

    // Ball monotonicity and B_m(B_n(Y)) = B_(m+n)(Y).
    const SubsetMask y = SubsetMask::of(u.size(), {static_cast<Element>(rng() % u.size())});
    for (std::size_t n = 0; n < 4; ++n) {
      EXPECT_TRUE(ball(u, y, n).is_subset_of(ball(u, y, n + 1)));
      for (std::size_t m = 0; m < 3; ++m) EXPECT_EQ(ball(u, ball(u, y, n), m).members(), ball(u, y, n + m).members());
    }

    // Nested induced substructures compose.
    const SubsetMask m1 = SubsetMask::from_bits(u.size(), rng());
    const auto i1 = induced(u, m1);
    const SubsetMask m2 = SubsetMask::from_bits(i1.structure.size(), rng());
    const auto i2 = induced(i1.structure, m2);
    SubsetMask composed(u.size());
    for (Element e : m2.members()) composed.insert(i1.to_parent[e]);
    EXPECT_EQ(i2.structure, induced(u, composed).structure);
    EXPECT_EQ(i2.structure, oracle::restrict_to(u, composed.members()));
  }
}

TEST(StructureJson, RoundTripAndRejection) {
  const Structure p = path(5);
  const Json j = to_json(p);
  EXPECT_EQ(j.dump(), R"({"vocabulary":[{"name":"E","arity":2}],"size":5,"relations":{"E":[[0,1],[1,2],[2,3],[3,4]]}})");
  EXPECT_EQ(structure_from_json(j), p);
  auto bad = j;
  bad["extra"] = 1;
  EXPECT_THROW(structure_from_json(bad), FormatError);
  bad = j;
  bad["relations"]["E"].push_back({0, 9});
  EXPECT_THROW(structure_from_json(bad), FormatError);
  bad = j;
  bad["relations"]["E"].push_back({0});
  EXPECT_THROW(structure_from_json(bad), FormatError);
  EXPECT_THROW(parse_json_text("{", "inline"), FormatError);
}
