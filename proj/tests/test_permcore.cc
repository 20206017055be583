#include <gtest/gtest.h>

#include <random>

#include "gtree/error.hpp"
#include "gtree/fingerprint.hpp"
#include "gtree/group.hpp"
#include "gtree/morphism.hpp"
#include "gtree/structure.hpp"
#include "oracle.hpp"

using namespace gtree;

namespace {

PermGroup sym(std::size_t n)
{
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i)
    cyc[i] = static_cast<Point>(i);
  return PermGroup(n, {Perm::from_cycles(n, {cyc}), Perm::parse("(0 1)", n)});
}

PermGroup alt(std::size_t n)
{
  std::vector<Perm> gens;
  for (Point i = 2; i < n; ++i)
    gens.push_back(Perm::from_cycles(n, {{0, 1, i}}));
  return PermGroup(n, gens);
}

PermGroup parse_group(std::size_t n, const char *text)
{
  return PermGroup(n, parse_perm_list(text, n));
}

}  // namespace

TEST(PermGroup, Basics)
{
  EXPECT_EQ(sym(4).order(), 24u);
  EXPECT_EQ(alt(5).order(), 60u);
  EXPECT_EQ(PermGroup(3, {}).order(), 1u);
  EXPECT_FALSE(alt(4).contains(Perm::parse("(0 1)", 4)));
  EXPECT_TRUE(alt(4).contains(Perm::parse("(0 1)(2 3)", 4)));
  EXPECT_THROW(PermGroup(3, {Perm::parse("(0 1)", 4)}), ArgumentError);
  EXPECT_THROW(sym(4).contains(Perm(5)), ArgumentError);
  EXPECT_EQ(orbit(sym(4), 0), (std::vector<Point>{0, 1, 2, 3}));
  EXPECT_THROW(orbit(sym(4), 9), ArgumentError);
}

TEST(PermGroup, Transitivity)
{
  EXPECT_EQ(transitivity_degree(sym(4)), 4u);
  EXPECT_EQ(transitivity_degree(alt(5)), 3u);
  EXPECT_EQ(transitivity_degree(sym(5)), 5u);
  PermGroup M11 = parse_group(11, "(0 1 2 3 4 5 6 7 8 9 10), (2 6 10 7)(3 9 4 5)");
  EXPECT_EQ(M11.order(), 7920u);
  EXPECT_EQ(transitivity_degree(M11), 4u);
  // PSL(2,11) on 11 points: its action on the cosets of an Alt(5).
  // On the projective line {0..10, inf=11}: x+1, 4x, -1/x.
  std::vector<Point> neg_inv(12), times4(12);
  for (Point x = 0; x < 11; ++x) {
    times4[x] = (4 * x) % 11;
    Point inv = 1;
    while (x && (inv * x) % 11 != 1)
      ++inv;
    neg_inv[x] = x == 0 ? 11 : (11 - inv) % 11;
  }
  times4[11] = 11;
  neg_inv[11] = 0;
  PermGroup L12(12, {Perm::parse("(0 1 2 3 4 5 6 7 8 9 10)", 12), Perm(times4), Perm(neg_inv)});
  ASSERT_EQ(L12.order(), 660u);
  std::mt19937_64 rng(3);
  PermGroup A5 = PermGroup::trivial(12);
  while (A5.order() != 60) {
    Perm a = L12.random_element(rng), b = L12.random_element(rng);
    if (a.order() == 2 && b.order() == 3 && (a * b).order() == 5)
      A5 = PermGroup(12, {a, b});
  }
  PermGroup L = coset_action(L12, A5).image;
  ASSERT_EQ(L.degree(), 11u);
  ASSERT_EQ(L.order(), 660u);
  EXPECT_EQ(transitivity_degree(L), 2u);
}

TEST(PermGroup, StabilizerOrders)
{
  PermGroup S = sym(6);
  EXPECT_EQ(stabilizer(S, {0}).order(), 120u);
  EXPECT_EQ(stabilizer(S, {0, 3}).order(), 24u);
  EXPECT_EQ(stabilizer(S, {5, 1, 2}).order(), 6u);
  EXPECT_THROW(stabilizer(S, {6}), ArgumentError);
}

TEST(PermGroup, RandomGroupsMatchEnumeration)
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    PermGroup G = oracle::random_small_group(rng);
    auto E = oracle::closure(G.degree(), G.generators());
    ASSERT_EQ(G.order(), E.size());
    // membership agrees with enumeration on the whole symmetric group sample
    for (int k = 0; k < 40; ++k) {
      Perm p = oracle::random_perm(G.degree(), rng);
      EXPECT_EQ(G.contains(p), E.count(p) > 0);
      EXPECT_EQ(G.contains(p), G.contains(p.inverse()));
    }
    for (auto const &g : E)
      ASSERT_TRUE(G.contains(g));
    auto listed = G.elements();
    EXPECT_EQ(listed.size(), E.size());
    for (auto const &g : listed)
      EXPECT_TRUE(E.count(g));
    // orbits and point stabilizers
    for (Point x = 0; x < G.degree(); ++x) {
      EXPECT_EQ(orbit(G, x), oracle::orbit(G.generators(), G.degree(), x));
      std::size_t fix = 0;
      for (auto const &g : E)
        fix += g[x] == x;
      EXPECT_EQ(stabilizer(G, {x}).order(), fix);
    }
  }
}

TEST(Structure, NormalClosure)
{
  EXPECT_EQ(normal_closure(sym(4), {Perm::parse("(0 1)", 4)}).order(), 24u);
  EXPECT_EQ(normal_closure(sym(4), {Perm::parse("(0 1)(2 3)", 4)}).order(), 4u);
  EXPECT_THROW(normal_closure(alt(4), {Perm::parse("(0 1)", 4)}), ArgumentError);
  // PGL(2,5) on the projective line {0..4, inf=5}: x+1, 2x, -1/x
  PermGroup pgl = parse_group(6, "(0 1 2 3 4), (1 2 4 3), (0 5)(1 4)");
  ASSERT_EQ(pgl.order(), 120u);
  PermGroup N = normal_closure(pgl, {Perm::parse("(0 1 2 3 4)", 6)});
  EXPECT_EQ(N.order(), 60u);
  auto E = oracle::closure(6, pgl.generators());
  EXPECT_EQ(oracle::normal_closure(6, E, {Perm::parse("(0 1 2 3 4)", 6)}).size(), 60u);
}

TEST(Structure, DerivedSeries)
{
  auto s = derived_series(sym(4));
  std::vector<std::uint64_t> orders;
  for (auto const &D : s)
    orders.push_back(D.order());
  EXPECT_EQ(orders, (std::vector<std::uint64_t>{24, 12, 4, 1}));
  EXPECT_TRUE(is_soluble(sym(4)));
  EXPECT_FALSE(is_soluble(alt(5)));
  EXPECT_TRUE(is_perfect(alt(5)));
  EXPECT_EQ(soluble_residual(sym(5)).order(), 60u);
}

TEST(Structure, RandomGroupsAgainstOracles)
{
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    PermGroup G = oracle::random_small_group(rng, 720);
    std::size_t n = G.degree();
    auto E = oracle::closure(n, G.generators());
    auto D = derived_subgroup(G);
    auto DE = oracle::derived(n, E);
    EXPECT_EQ(D.order(), DE.size());
    for (auto const &g : D.generators())
      EXPECT_TRUE(DE.count(g));
    PermGroup res = soluble_residual(G);
    EXPECT_TRUE(is_perfect(res));
    EXPECT_EQ(res.order() == 1, oracle::soluble(n, E));
    PermGroup R = soluble_radical(G);
    auto RE = oracle::radical(n, E);
    EXPECT_EQ(R.order(), RE.size());
    EXPECT_TRUE(is_normal(R, G));
    EXPECT_TRUE(is_soluble(R));
    EXPECT_EQ(kappa_class(G) == Kappa::zero, res.order() == 1);
    // normal subgroups: count matches brute lattice
    EXPECT_EQ(normal_subgroups(G).size(), oracle::normal_subgroups(n, E).size());
    // minimal normal subgroups are normal and minimal among the brute lattice
    auto lattice = oracle::normal_subgroups(n, E);
    for (auto const &M : minimal_normal_subgroups(G)) {
      EXPECT_TRUE(is_normal(M, G));
      std::size_t below = 0;
      auto ME = oracle::closure(n, M.generators());
      for (auto const &L : lattice)
        if (L.size() > 1 && L.size() < ME.size() && oracle::subset(L, ME))
          ++below;
      EXPECT_EQ(below, 0u);
    }
    // radical quotient has trivial radical
    if (R.order() > 1 && R.order() < G.order()) {
      auto ca = coset_action(G, R);
      // the action on cosets of a normal subgroup has kernel R
      EXPECT_EQ(ca.map.kernel().order(), R.order());
      EXPECT_EQ(soluble_radical(ca.image).order(), 1u);
    }
  }
}

TEST(Structure, RadicalExamples)
{
  EXPECT_EQ(soluble_radical(sym(4)).order(), 24u);
  EXPECT_EQ(soluble_radical(alt(5)).order(), 1u);
  EXPECT_EQ(socle(sym(4)).order(), 4u);
  EXPECT_EQ(socle(alt(5)).order(), 60u);
}

TEST(Structure, Kappa)
{
  EXPECT_EQ(kappa_class(sym(4)), Kappa::zero);
  EXPECT_EQ(kappa_class(sym(5)), Kappa::one);
  // Alt(5) x Alt(5) on 10 points
  PermGroup A2 = parse_group(10, "(0 1 2), (0 1 2 3 4), (5 6 7), (5 6 7 8 9)");
  ASSERT_EQ(A2.order(), 3600u);
  EXPECT_EQ(kappa_class(A2), Kappa::many);
  // Sym(4) x Alt(5): one nonabelian factor
  PermGroup B = parse_group(9, "(0 1 2 3), (0 1), (4 5 6), (4 5 6 7 8)");
  EXPECT_EQ(kappa_class(B), Kappa::one);
}

TEST(Structure, SylowNormalizerCentralizer)
{
  PermGroup S = sym(4);
  PermGroup P = sylow_subgroup(S, 2);
  EXPECT_EQ(P.order(), 8u);
  EXPECT_EQ(sylow_subgroup(S, 3).order(), 3u);
  EXPECT_EQ(normalizer(S, sylow_subgroup(S, 3)).order(), 6u);
  EXPECT_EQ(normalizer(S, P).order(), 8u);
  EXPECT_EQ(centralizer(S, S).order(), 1u);
  EXPECT_EQ(centralizer(S, PermGroup(4, {Perm::parse("(0 1)(2 3)", 4)})).order(), 8u);
}

TEST(Structure, AbelianInvariants)
{
  EXPECT_EQ(abelian_invariants(sym(4)), (std::vector<std::uint64_t>{2}));
  EXPECT_TRUE(abelian_invariants(alt(5)).empty());
  PermGroup C = parse_group(9, "(0 1 2 3), (4 5), (6 7 8)");
  EXPECT_EQ(abelian_invariants(C), (std::vector<std::uint64_t>{2, 3, 4}));
  PermGroup V = parse_group(4, "(0 1)(2 3), (0 2)(1 3)");
  EXPECT_EQ(abelian_invariants(V), (std::vector<std::uint64_t>{2, 2}));
}

TEST(Morphism, IdentityAndKernel)
{
  PermGroup S2 = PermGroup(2, {Perm::parse("(0 1)", 2)});
  GroupMorphism id(S2, S2, S2.generators());
  EXPECT_EQ(id.kernel().order(), 1u);
  // sign map Sym(4) -> Sym(2)
  PermGroup S4 = sym(4);
  std::vector<Perm> ims;
  for (auto const &g : S4.generators()) {
    std::size_t inv = 0;
    for (Point i = 0; i < 4; ++i)
      for (Point j = i + 1; j < 4; ++j)
        inv += g[i] > g[j];
    ims.push_back(inv % 2 ? Perm::parse("(0 1)", 2) : Perm(2));
  }
  GroupMorphism sign(S4, S2, ims);
  EXPECT_EQ(sign.kernel().order(), 12u);
  EXPECT_TRUE(same_group(sign.kernel(), alt(4)));
  EXPECT_EQ(sign.eval(Perm::parse("(0 1 2 3)", 4)), Perm::parse("(0 1)", 2));
  EXPECT_EQ(sign.image(PermGroup::trivial(4)).order(), 1u);
  EXPECT_EQ(sign.preimage(PermGroup::trivial(2)).order(), 12u);
  EXPECT_EQ(sign.preimage(S2).order(), 24u);
}

TEST(Morphism, RejectsNonHomomorphism)
{
  // order-3 generator sent to an involution
  PermGroup C3(3, {Perm::parse("(0 1 2)", 3)});
  PermGroup S2(2, {Perm::parse("(0 1)", 2)});
  EXPECT_THROW(GroupMorphism(C3, S2, {Perm::parse("(0 1)", 2)}), ArgumentError);
  // image outside the codomain
  PermGroup T2 = PermGroup::trivial(2);
  EXPECT_THROW(GroupMorphism(S2, T2, {Perm::parse("(0 1)", 2)}), ArgumentError);
}

TEST(Morphism, RandomHomomorphismLaws)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    PermGroup G = oracle::random_small_group(rng, 2000);
    // action on unordered pairs is a homomorphism G -> Sym(pairs)
    std::size_t n = G.degree();
    std::vector<std::pair<Point, Point>> pairs;
    for (Point i = 0; i < n; ++i)
      for (Point j = i + 1; j < n; ++j)
        pairs.push_back({i, j});
    auto act = [&](const Perm &g) {
      std::vector<Point> im;
      for (auto [a, b] : pairs) {
        Point x = std::min(g[a], g[b]), y = std::max(g[a], g[b]);
        im.push_back(static_cast<Point>(
            std::find(pairs.begin(), pairs.end(), std::make_pair(x, y)) - pairs.begin()));
      }
      return Perm(im);
    };
    std::vector<Perm> ims;
    for (auto const &g : G.generators())
      ims.push_back(act(g));
    PermGroup Im(pairs.size(), ims);
    GroupMorphism phi(G, Im, ims);
    for (int k = 0; k < 100; ++k) {
      Perm g = G.random_element(rng), h = G.random_element(rng);
      ASSERT_EQ(phi.eval(g * h), phi.eval(g) * phi.eval(h));
      ASSERT_EQ(phi.eval(g), act(g));
    }
    EXPECT_EQ(G.order(), phi.kernel().order() * phi.image(G).order());
    PermGroup sub(pairs.size(), {phi.eval(G.random_element(rng))});
    PermGroup pre = phi.preimage(sub);
    EXPECT_EQ(pre.order(), phi.kernel().order() * sub.order());
    for (auto const &g : pre.generators())
      EXPECT_TRUE(sub.contains(phi.eval(g)));
  }
}

TEST(Intersection, Examples)
{
  EXPECT_EQ(intersection(alt(4), PermGroup(4, {Perm::parse("(0 1)", 4)})).order(), 1u);
  EXPECT_TRUE(same_group(intersection(sym(5), sym(5)), sym(5)));
  EXPECT_THROW(intersection(sym(4), sym(5)), ArgumentError);
}

TEST(Intersection, RandomAgainstEnumeration)
{
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 4 + rng() % 4;
    PermGroup H(n, {oracle::random_perm(n, rng), oracle::random_perm(n, rng)});
    PermGroup K(n, {oracle::random_perm(n, rng)});
    if (trial % 2)
      K = PermGroup(n, {oracle::random_perm(n, rng), oracle::random_perm(n, rng)});
    auto HE = oracle::closure(n, H.generators());
    auto KE = oracle::closure(n, K.generators());
    std::size_t common = 0;
    for (auto const &x : HE)
      common += KE.count(x);
    EXPECT_EQ(intersection(H, K).order(), common);
  }
}

TEST(Intersection, BacktrackOnLargerGroups)
{
  // order above the brute limit: Sym(8) and a conjugate of Sym(4) wr Sym(2)
  PermGroup S8 = sym(8);
  PermGroup W = parse_group(8, "(0 1 2 3), (0 1), (0 4)(1 5)(2 6)(3 7)");
  ASSERT_EQ(W.order(), 1152u);
  PermGroup A8 = alt(8);
  EXPECT_EQ(intersection(A8, W).order(), 576u);
  PermGroup X = parse_group(8, "(0 1 2 3 4 5 6), (0 1 2)");
  EXPECT_EQ(intersection(A8, X).order(), X.order());
  (void)S8;
}

TEST(CosetAction, Examples)
{
  PermGroup S3 = sym(3);
  auto ca = coset_action(S3, PermGroup(3, {Perm::parse("(0 1)", 3)}));
  EXPECT_EQ(ca.image.degree(), 3u);
  EXPECT_EQ(ca.image.order(), 6u);
  auto cb = coset_action(sym(5), alt(5));
  EXPECT_EQ(cb.image.degree(), 2u);
  EXPECT_EQ(cb.map.kernel().order(), 60u);
  EXPECT_THROW(coset_action(sym(6), PermGroup::trivial(6), 100), BudgetError);
  EXPECT_THROW(coset_action(alt(4), sym(4)), ArgumentError);
}

TEST(Fingerprint, Comparisons)
{
  PermGroup S3 = sym(3);
  PermGroup S3b(3, {Perm::parse("(0 2 1)", 3), Perm::parse("(1 2)", 3)});
  EXPECT_NE(same_structure(S3, S3b), Verdict::mismatch);
  PermGroup K(6, parse_perm_list("(3 4 5), (3 4)", 6));
  PermGroup K2(6, parse_perm_list("(0 2 4), (0 4)", 6));
  EXPECT_EQ(same_structure(K, K2), Verdict::conjugate);
  PermGroup V = parse_group(4, "(0 1)(2 3), (0 2)(1 3)");
  EXPECT_EQ(same_structure(alt(4), fingerprint(V)), Verdict::mismatch);
  Fingerprint f = fingerprint(sym(4));
  EXPECT_EQ(f.order, 24u);
  EXPECT_EQ(f.kappa, Kappa::zero);
  EXPECT_EQ(f.residual_order, 1u);
  EXPECT_EQ(*f.transitivity_degree, 4u);
}
