#include <gtest/gtest.h>

#include <set>

#include "gtree/catalog.hpp"
#include "gtree/error.hpp"
#include "gtree/structure.hpp"

using namespace gtree;

namespace {

// Same generators with no order hint, so the chain is fully verified.
std::uint64_t verified_order(const PermGroup &G)
{
  return PermGroup(G.degree(), G.generators()).order();
}

bool two_transitive(const PermGroup &G)
{
  if (orbits(G).size() != 1)
    return false;
  return G.degree() < 2 || orbits(stabilizer(G, {0})).size() == 2;
}

std::size_t nonfixed_orbits(const PermGroup &G, Point fixed)
{
  std::size_t n = 0;
  for (auto const &o : orbits(G))
    if (!(o.size() == 1 && o[0] == fixed))
      ++n;
  return n;
}

}  // namespace

TEST(Field, AxiomsOnSmallFields)
{
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u}) {
    Field F(q);
    for (Field::Elt a = 0; a < q; ++a) {
      EXPECT_EQ(F.add(a, F.neg(a)), 0u);
      EXPECT_EQ(F.mul(a, 1), a);
      if (a)
        EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
      for (Field::Elt b = 0; b < q; ++b) {
        EXPECT_EQ(F.add(a, b), F.add(b, a));
        EXPECT_EQ(F.mul(a, b), F.mul(b, a));
        for (Field::Elt c = 0; c < q; c += 3)
          EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
        EXPECT_EQ(F.frob(F.mul(a, b)), F.mul(F.frob(a), F.frob(b)));
        EXPECT_EQ(F.frob(F.add(a, b)), F.add(F.frob(a), F.frob(b)));
      }
    }
    EXPECT_EQ(F.mult_order(F.mu()), q - 1) << q;
  }
}

TEST(Field, FrobeniusOrderAndGenerator)
{
  Field F16(16);
  EXPECT_EQ(F16.e(), 4u);
  std::size_t order = 0;
  for (std::size_t k = 1; k <= 4 && !order; ++k) {
    bool id = true;
    for (Field::Elt a = 0; a < 16; ++a) {
      Field::Elt x = a;
      for (std::size_t i = 0; i < k; ++i)
        x = F16.frob(x);
      id = id && x == a;
    }
    if (id)
      order = k;
  }
  EXPECT_EQ(order, 4u);

  Field F9(9);
  std::set<Field::Elt> powers;
  for (std::uint64_t k = 0; k < 8; ++k)
    powers.insert(F9.pow(F9.mu(), k));
  EXPECT_EQ(powers.size(), 8u);
  EXPECT_FALSE(powers.count(0));

  Field F5(5);
  EXPECT_TRUE(F5.mu() == 2 || F5.mu() == 3);
  EXPECT_THROW(Field(6), ArgumentError);
}

TEST(Field, LargeFieldsUsePolynomialArithmetic)
{
  for (std::uint32_t q : {81u, 121u, 125u, 128u, 243u, 256u, 251u}) {
    Field F(q);
    EXPECT_EQ(F.mult_order(F.mu()), q - 1) << q;
    for (Field::Elt a = 1; a < q; a += 7)
      EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
  }
}

TEST(ProjectiveSpace, EnumerationAndNormalization)
{
  for (auto [q, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {4, 3}, {5, 3}, {9, 2}}) {
    Field F(q);
    ProjectiveSpace P(F, d);
    std::uint64_t expect = 1, qk = 1;
    for (std::uint32_t i = 1; i < d; ++i)
      expect += (qk *= q);
    EXPECT_EQ(P.size(), expect);
    for (std::size_t i = 0; i < P.size(); ++i) {
      EXPECT_EQ(P.index_of(P.point(i)), i);
      auto v = P.point(i);
      for (auto &x : v)
        x = F.mul(x, F.mu());
      EXPECT_EQ(P.index_of(v), i);
      if (i)
        EXPECT_LT(P.point(i - 1), P.point(i));
    }
  }
}

TEST(Catalog, ProjectiveOrders)
{
  auto g = projective_group(3, 4, Flavor::pgammal);
  EXPECT_EQ(g.group.degree(), 21u);
  EXPECT_EQ(g.formula_order, 120960u);
  EXPECT_EQ(verified_order(g.group), 120960u);
  EXPECT_EQ(g.e_G, 2u);

  auto h = projective_group(3, 5, Flavor::pgammal);
  EXPECT_EQ(h.group.degree(), 31u);
  EXPECT_EQ(verified_order(h.group), 372000u);

  auto a5 = projective_group(2, 4, Flavor::psl);
  EXPECT_EQ(a5.group.degree(), 5u);
  EXPECT_EQ(verified_order(a5.group), 60u);
}

TEST(Catalog, FormulasAgreeWithChains)
{
  for (auto const &name :
       {"psl:2:5", "pgl:2:5", "psl:2:7", "pgl:2:9", "pgammal:2:9", "psl:2:8", "pgammal:2:8",
        "psl:3:2", "pgammal:3:3", "psl:3:4", "pgl:3:4", "psl:4:2", "pgammal:2:16", "psl:2:11",
        "sym:6", "alt:7", "affine:3:2:gl", "affine:2:3:sl", "affine:4:2:gammal",
        "affine:8:1:gammal1", "affine:5:1:mult", "m11"}) {
    auto e = catalog(name);
    EXPECT_EQ(verified_order(e.group), e.formula_order) << name;
    EXPECT_TRUE(two_transitive(e.group)) << name;
  }
}

TEST(Catalog, SymmetricAlternating)
{
  EXPECT_EQ(symmetric(3).group.order(), 6u);
  EXPECT_EQ(alternating(6).group.order(), 360u);
  EXPECT_EQ(transitivity_degree(symmetric(5).group), 5u);
  EXPECT_EQ(verified_order(alternating(8).group), 20160u);
  EXPECT_EQ(symmetric(1).group.order(), 1u);
  EXPECT_THROW(alternating(2), ArgumentError);
}

TEST(Catalog, GammaL1)
{
  EXPECT_EQ(verified_order(gamma_l1(16)), 60u);
  EXPECT_EQ(verified_order(gamma_l1(9)), 16u);
  auto g27 = catalog("gammal1:27").group;
  EXPECT_EQ(verified_order(g27), 78u);
  EXPECT_EQ(orbits(g27).size(), 2u);
  auto c4 = gamma_l1(5);
  EXPECT_EQ(c4.order(), 4u);
  EXPECT_EQ(abelian_invariants(c4), std::vector<std::uint64_t>{4});
}

TEST(Catalog, AffineExamples)
{
  auto s4 = affine_group(4, 1, linear_group_on_vectors(4, 1, "gammal1"), "gammal1");
  EXPECT_EQ(verified_order(s4.group), 24u);
  EXPECT_TRUE(same_group(s4.group, symmetric(4).group));

  auto s4b = affine_group(2, 2, linear_group_on_vectors(2, 2, "gl"), "gl");
  EXPECT_TRUE(same_group(s4b.group, symmetric(4).group));

  auto s3 = affine_group(3, 1, linear_group_on_vectors(3, 1, "mult"), "mult");
  EXPECT_TRUE(same_group(s3.group, symmetric(3).group));

  // The stabilizer of 0 is the linear part.
  auto L = linear_group_on_vectors(3, 2, "sl");
  auto A = affine_group(3, 2, L);
  EXPECT_TRUE(same_group(stabilizer(A.group, {0}), L));

  // Squares of F_5^* are not transitive on nonzero vectors.
  Field F5(5);
  std::vector<Point> sq(5);
  for (Point x = 0; x < 5; ++x)
    sq[x] = F5.mul(4, x);
  EXPECT_THROW(affine_group(5, 1, PermGroup(5, {Perm(sq)})), ArgumentError);
}

TEST(Catalog, Mathieu11)
{
  auto m = mathieu11();
  EXPECT_EQ(m.group.order(), 7920u);
  EXPECT_EQ(transitivity_degree(m.group), 4u);
  auto s = stabilizer(m.group, {0});
  EXPECT_FALSE(is_soluble(s));
  EXPECT_EQ(soluble_residual(s).order(), 360u);
}

TEST(Catalog, ResidualProjectiveAction)
{
  struct Row {
    std::uint32_t q;
    std::size_t degree;
    std::uint64_t image, kernel;
  };
  for (auto r : {Row{5, 6, 120, 100}, Row{4, 5, 120, 48}, Row{2, 3, 6, 4}}) {
    auto psi = residual_projective_action(3, r.q, Flavor::pgammal, 0);
    EXPECT_EQ(psi.codomain().degree(), r.degree);
    EXPECT_EQ(psi.image().order(), r.image) << r.q;
    EXPECT_EQ(psi.kernel().order(), r.kernel) << r.q;
  }
  // Any base point gives the same orders.
  auto psi = residual_projective_action(3, 4, Flavor::pgammal, 17);
  EXPECT_EQ(psi.kernel().order(), 48u);
  EXPECT_THROW(residual_projective_action(2, 4, Flavor::pgammal, 0), ArgumentError);
}

TEST(Catalog, PointStabilizerSocleIsElementaryAbelian)
{
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto F = projective_group(3, q, Flavor::pgammal).group;
    auto S = socle(stabilizer(F, {0}));
    EXPECT_EQ(S.order(), std::uint64_t{q} * q) << q;
    Field Fq(q);
    std::vector<std::uint64_t> inv(2, Fq.p());
    if (Fq.e() == 2)
      inv.assign(4, Fq.p());
    EXPECT_EQ(abelian_invariants(S), inv) << q;
  }
}

TEST(Catalog, Sl25AffineDeltaStar)
{
  const std::pair<std::uint32_t, std::size_t> expected[] = {{9, 2}, {11, 1}, {19, 3}, {29, 7}, {59, 29}};
  for (auto [q, delta] : expected) {
    auto s = exceptional_sl25_affine_search(q);
    auto const &G = s.entry.group;
    EXPECT_EQ(G.degree(), q * q);
    EXPECT_EQ(s.entry.formula_order, std::uint64_t{q} * q * 60 * (q - 1));
    EXPECT_EQ(verified_order(G), s.entry.formula_order);
    EXPECT_TRUE(s.entry.seed.has_value());
    auto G0 = stabilizer(G, {0});
    EXPECT_EQ(orbits(G0).size(), 2u);
    auto N = soluble_residual(G0);
    EXPECT_EQ(N.order(), 120u);
    EXPECT_TRUE(is_perfect(N));
    EXPECT_EQ(nonfixed_orbits(N, 0), delta) << q;
  }
  EXPECT_THROW(exceptional_sl25_affine(13), ArgumentError);
}

TEST(Catalog, Sl25AffineSeedIsReproducible)
{
  auto a = exceptional_sl25_affine_search(11, 7);
  auto b = exceptional_sl25_affine_search(11, 7);
  EXPECT_EQ(a.attempts, b.attempts);
  EXPECT_EQ(a.sl25.generators(), b.sl25.generators());
}

TEST(Catalog, NamesAndErrors)
{
  EXPECT_EQ(catalog("sl25affine:11").group.degree(), 121u);
  EXPECT_THROW(catalog("foo:3"), ArgumentError);
  EXPECT_THROW(catalog("psl:3"), ArgumentError);
  EXPECT_THROW(catalog("psl:x:3"), ArgumentError);
  EXPECT_THROW(catalog("pgl:2:6"), ArgumentError);
  EXPECT_THROW(catalog("affine:4:1:bogus"), ArgumentError);
}
