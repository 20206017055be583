#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "gtree/blocktrans.hpp"
#include "gtree/catalog.hpp"
#include "gtree/error.hpp"
#include "gtree/structure.hpp"
#include "oracle.hpp"

using namespace gtree;

namespace {

BlockSystem contiguous(std::size_t blocks, std::size_t size)
{
  std::vector<std::uint32_t> labels;
  for (std::size_t i = 0; i < blocks * size; ++i)
    labels.push_back(static_cast<std::uint32_t>(i / size));
  return BlockSystem::from_labels(labels);
}

// Random element of Sym(size) wr Sym(blocks) on contiguous blocks.
Perm random_wreath(std::size_t blocks, std::size_t size, std::mt19937_64 &rng)
{
  Perm top = oracle::random_perm(blocks, rng);
  std::vector<Point> im(blocks * size);
  for (std::size_t b = 0; b < blocks; ++b) {
    Perm in = oracle::random_perm(size, rng);
    for (std::size_t i = 0; i < size; ++i)
      im[b * size + i] = static_cast<Point>(top[static_cast<Point>(b)] * size + in[static_cast<Point>(i)]);
  }
  return Perm(im);
}

std::size_t brute_tuple_orbit(const PermGroup &G, const BlockSystem &B, std::size_t k)
{
  std::vector<Point> t;
  for (Point x = 0; t.size() < k; ++x) {
    bool ok = true;
    for (Point y : t)
      ok = ok && B.block_of[x] != B.block_of[y];
    if (ok)
      t.push_back(x);
  }
  std::set<std::vector<Point>> orbit;
  G.for_each_element([&](const Perm &g) {
    std::vector<Point> im;
    for (Point x : t)
      im.push_back(g[x]);
    orbit.insert(im);
  });
  return orbit.size();
}

struct Row {
  const char *group;
  const char *spec;
  std::uint64_t point_stab_order;
  std::size_t blocks, block_size;
};

const Row kTableRows[] = {
    {"m11", "derived", 360, 11, 2},
    {"pgammal:3:2", "derived", 12, 7, 2},
    {"pgammal:3:3", "derived", 216, 13, 2},
    {"pgammal:3:4", "socle-normalizer:5", 960, 21, 6},
    {"pgammal:3:5", "residual", 3000, 31, 4},
    {"pgammal:3:5", "socle-normalizer:2", 2400, 31, 5},
};

}  // namespace

TEST(BlockSystem, LabelsAndInvariance)
{
  auto B = BlockSystem::from_labels({5, 5, 2, 2, 9, 9});
  EXPECT_EQ(B.count, 3u);
  EXPECT_EQ(B.size, 2u);
  EXPECT_EQ(B.block_of, (std::vector<std::uint32_t>{0, 0, 1, 1, 2, 2}));
  EXPECT_EQ(B.members(1), (std::vector<Point>{2, 3}));
  EXPECT_THROW(BlockSystem::from_labels({0, 0, 1}), ArgumentError);

  PermGroup G(4, parse_perm_list("(0 2)(1 3), (0 1)", 4));
  EXPECT_TRUE(is_invariant(G, contiguous(2, 2)));
  EXPECT_FALSE(is_invariant(PermGroup(4, parse_perm_list("(1 2)", 4)), contiguous(2, 2)));
}

TEST(DistantTuples, SmallExamples)
{
  auto S4 = symmetric(4).group;
  EXPECT_THROW(distant_tuples_transitive(S4, contiguous(2, 2), 2), ArgumentError);
  auto W = PermGroup(4, parse_perm_list("(0 2)(1 3), (0 1)", 4));
  EXPECT_TRUE(distant_tuples_transitive(W, contiguous(2, 2), 2));
  EXPECT_TRUE(distant_tuples_transitive(S4, BlockSystem::singletons(4), 3));

  auto intrans = PermGroup(4, parse_perm_list("(0 1), (2 3)", 4));
  EXPECT_FALSE(distant_tuples_transitive(intrans, BlockSystem::singletons(4), 2));
  EXPECT_THROW(distant_tuples_transitive(W, contiguous(2, 2), 3), ArgumentError);
  EXPECT_THROW(distant_tuples_transitive(W, contiguous(2, 2), 4), ArgumentError);
}

TEST(DistantTuples, MatchesEnumeration)
{
  std::mt19937_64 rng(11);
  int positives = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t blocks = 3 + rng() % 2, size = 1 + rng() % 3;
    std::vector<Perm> gens;
    std::size_t ngens = 1 + rng() % 3;
    for (std::size_t i = 0; i < ngens; ++i)
      gens.push_back(random_wreath(blocks, size, rng));
    PermGroup G(blocks * size, gens);
    if (G.order() > 20000)
      continue;
    auto B = contiguous(blocks, size);
    for (std::size_t k : {2u, 3u}) {
      bool brute = brute_tuple_orbit(G, B, k) == distant_tuple_count(B, k);
      EXPECT_EQ(distant_tuples_transitive(G, B, k), brute) << G.order() << " k=" << k;
      positives += brute;
    }
  }
  EXPECT_GT(positives, 0);
}

TEST(TwoBBT, TableRows)
{
  for (auto const &row : kTableRows) {
    auto F = catalog(row.group).group;
    auto P = point_stabilizer_subgroup(F, row.spec);
    EXPECT_EQ(P.order(), row.point_stab_order) << row.group;
    auto r = two_bbt_from_subgroup(F, stabilizer(F, {0}), P);
    EXPECT_EQ(r.degree, row.blocks * row.block_size) << row.group;
    EXPECT_EQ(r.blocks, row.blocks);
    EXPECT_EQ(r.block_size, row.block_size) << row.group << " " << row.spec;
    EXPECT_TRUE(r.k1);
    EXPECT_TRUE(r.k2) << row.group << " " << row.spec;
    // 2-bbt forces a 2-transitive action on the blocks.
    std::vector<Perm> on_blocks;
    for (auto const &g : r.action.generators()) {
      std::vector<Point> im(r.blocks);
      for (std::size_t x = 0; x < r.degree; ++x)
        im[r.system.block_of[x]] = r.system.block_of[g[static_cast<Point>(x)]];
      on_blocks.push_back(Perm(im));
    }
    EXPECT_GE(transitivity_degree(PermGroup(r.blocks, on_blocks)), 2u);
  }
}

TEST(TwoBBT, PointStabilizerShapes)
{
  // W x| GammaL1(16): soluble, abelianization C4.
  auto F4 = catalog("pgammal:3:4").group;
  auto P4 = point_stabilizer_subgroup(F4, "socle-normalizer:5");
  EXPECT_TRUE(is_soluble(P4));
  EXPECT_EQ(abelian_invariants(P4), std::vector<std::uint64_t>{4});
  EXPECT_TRUE(is_subgroup(socle(stabilizer(F4, {0})), P4));

  // W x| (SL2(3) x| C4): soluble of order 2400 containing W.
  auto F5 = catalog("pgammal:3:5").group;
  auto P5 = point_stabilizer_subgroup(F5, "socle-normalizer:2");
  EXPECT_TRUE(is_soluble(P5));
  EXPECT_EQ(derived_subgroup(P5).order(), 25u * 24);

  // W x| SL2(3) in PGammaL3(3) and W x| C3 in PGammaL3(2).
  auto F3 = catalog("pgammal:3:3").group;
  EXPECT_EQ(socle(point_stabilizer_subgroup(F3, "derived")).order(), 9u);
  auto F2 = catalog("pgammal:3:2").group;
  EXPECT_EQ(abelian_invariants(point_stabilizer_subgroup(F2, "derived")),
            std::vector<std::uint64_t>{3});
}

TEST(TwoBBT, DegenerateBlocks)
{
  for (auto name : {"pgammal:3:3", "m11", "sym:5"}) {
    auto F = catalog(name).group;
    auto H = stabilizer(F, {0});
    auto r = two_bbt_from_subgroup(F, H, H);
    EXPECT_EQ(r.block_size, 1u);
    EXPECT_EQ(r.degree, F.degree());
    EXPECT_EQ(r.k2, transitivity_degree(F) >= 2);
    EXPECT_EQ(r.k3, transitivity_degree(F) >= 3) << name;
  }
  auto F = catalog("pgammal:3:2").group;
  auto H = stabilizer(F, {0});
  EXPECT_THROW(two_bbt_from_subgroup(F, point_stabilizer_subgroup(F, "derived"), H),
               ArgumentError);
}

TEST(TwoBBT, Json)
{
  auto F = catalog("m11").group;
  auto r = two_bbt_from_subgroup(F, stabilizer(F, {0}), point_stabilizer_subgroup(F, "derived"));
  r.delta_star = delta_star(F);
  auto j = to_json(r);
  EXPECT_EQ(j["degree"], 22);
  EXPECT_EQ(j["blocks"], 11);
  EXPECT_EQ(j["block_size"], 2);
  EXPECT_EQ(j["k2"], true);
  EXPECT_EQ(j["delta_star"], 1);
}

TEST(DeltaStar, Values)
{
  EXPECT_EQ(delta_star(exceptional_sl25_affine(19).group), 3u);
  EXPECT_EQ(delta_star(mathieu11().group), 1u);
  EXPECT_EQ(delta_star(symmetric(3).group), 2u);
  for (auto name : {"pgammal:3:4", "pgammal:3:5", "m11"})
    EXPECT_EQ(delta_star(catalog(name).group), 1u) << name;
  // Independent of the base point.
  auto F = exceptional_sl25_affine(9).group;
  EXPECT_EQ(delta_star(F, 0), 2u);
  EXPECT_EQ(delta_star(F, 40), 2u);
}

TEST(DeltaStar, SolubleStabilizerGivesDegreeMinusOne)
{
  for (auto name : {"sym:4", "affine:5:1:mult", "affine:8:1:gammal1", "pgammal:2:8", "affine:3:2:gl"}) {
    auto F = catalog(name).group;
    ASSERT_TRUE(is_soluble(stabilizer(F, {0}))) << name;
    EXPECT_EQ(delta_star(F), F.degree() - 1) << name;
  }
}

TEST(NormalOrbitCount, Examples)
{
  auto F2 = catalog("pgammal:3:2").group;
  auto H2 = stabilizer(F2, {0});
  EXPECT_EQ(normal_orbit_count(F2, 0, soluble_radical(H2)), 1u);
  EXPECT_EQ(normal_orbit_count(F2, 0, derived_subgroup(H2)), 1u);

  auto F3 = catalog("pgammal:3:3").group;
  auto H3 = stabilizer(F3, {0});
  EXPECT_EQ(normal_orbit_count(F3, 0, PermGroup::trivial(13)), 12u);
  EXPECT_EQ(normal_orbit_count(F3, 0, H3), 1u);
  EXPECT_THROW(normal_orbit_count(F3, 0, sylow_subgroup(H3, 2)), ArgumentError);

  // With blocks: the M11 derived-subgroup system has 10 other blocks.
  auto M = catalog("m11").group;
  auto r = two_bbt_from_subgroup(M, stabilizer(M, {0}), point_stabilizer_subgroup(M, "derived"));
  auto Hb = stabilizer(r.action, {0});
  EXPECT_EQ(normal_orbit_count(r.action, 0, Hb, r.system), 1u);
  EXPECT_EQ(normal_orbit_count(r.action, 0, PermGroup::trivial(22), r.system), 10u);
}

TEST(NormalOrbitCount, SmallProjectivePlanes)
{
  const std::pair<const char *, std::set<std::size_t>> cases[] = {
      {"pgammal:3:2", {1, 3, 6}}, {"pgammal:3:3", {1, 4, 12}}};
  for (auto const &[name, allowed] : cases) {
    auto F = catalog(name).group;
    std::set<std::size_t> seen;
    for (auto const &N : normal_subgroups(stabilizer(F, {0})))
      seen.insert(normal_orbit_count(F, 0, N));
    EXPECT_EQ(seen, allowed) << name;
  }
}

TEST(PointStabilizerSpec, Parsing)
{
  auto F = catalog("pgammal:3:3").group;
  EXPECT_EQ(point_stabilizer_subgroup(F, "stab").order(), 432u);
  EXPECT_EQ(point_stabilizer_subgroup(F, "socle").order(), 9u);
  EXPECT_EQ(point_stabilizer_subgroup(F, "sylow:3").order(), 27u);
  EXPECT_EQ(point_stabilizer_subgroup(F, "residual").order(), 1u);
  EXPECT_THROW(point_stabilizer_subgroup(F, "sylow:4"), ArgumentError);
  EXPECT_THROW(point_stabilizer_subgroup(F, "bogus"), ArgumentError);
  auto M = catalog("m11").group;
  auto g = stabilizer(M, {0}).generators()[0];
  EXPECT_EQ(point_stabilizer_subgroup(M, "gens:" + g.str()).order(), g.order());
  EXPECT_THROW(point_stabilizer_subgroup(M, "gens:(0 1)"), ArgumentError);
}
