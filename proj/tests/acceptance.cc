// One line per acceptance criterion on stdout; details of failures on stderr.

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <string>

#include "gtree/group.hpp"
#include "gtree/structure.hpp"
#include "gtree/verify.hpp"
#include "oracle.hpp"

using namespace gtree;

namespace {

struct Criterion {
  int id;
  const char *title;
  double total_limit;  // seconds over all scenarios, 0 for none
};

const Criterion kCriteria[] = {
    {1, "delta* table for the SL(2,5) affine groups", 120},
    {2, "2-by-block-transitive table rows", 0},
    {3, "exceptional (31,21) system", 300},
    {4, "small-plane systems (M11, PGammaL(3,2), PGammaL(3,3))", 0},
    {5, "identity suite over bundled and random systems", 0},
    {6, "brute-force ball oracle", 120},
    {7, "finite-group operator suite", 0},
    {8, "arc-pair classification", 1},
};

oracle::ElemSet as_set(const PermGroup &G)
{
  auto v = G.elements();
  return oracle::ElemSet(v.begin(), v.end());
}

bool same(const PermGroup &G, const oracle::ElemSet &S)
{
  if (G.order() != S.size())
    return false;
  for (auto const &g : S)
    if (!G.contains(g))
      return false;
  return true;
}

// Permutation-group operators against explicit element sets.
void brute_force_operators(ScenarioContext &cx)
{
  std::mt19937_64 rng(20240611);
  cx.seed("operator_oracle_seed", 20240611);
  std::uint64_t bad = 0, groups = 0;
  auto fail = [&](bool ok) { bad += !ok; };
  for (int trial = 0; trial < 40; ++trial) {
    PermGroup G = oracle::random_small_group(rng, 5040);
    std::size_t n = G.degree();
    auto S = oracle::closure(n, G.generators());
    ++groups;
    fail(G.order() == S.size());
    for (int i = 0; i < 5; ++i) {
      Perm p = oracle::random_perm(n, rng);
      fail(G.contains(p) == (S.count(p) > 0));
    }
    for (Point x = 0; x < n; ++x) {
      auto o = orbit(G, x);
      std::sort(o.begin(), o.end());
      fail(o == oracle::orbit(G.generators(), n, x));
    }
    oracle::ElemSet stab;
    for (auto const &g : S)
      if (g[0] == 0)
        stab.insert(g);
    fail(same(stabilizer(G, {0}), stab));

    auto D = oracle::derived(n, S);
    fail(same(derived_subgroup(G), D));
    fail(is_soluble(G) == oracle::soluble(n, S));
    auto R = S;
    for (auto next = oracle::derived(n, R); next.size() != R.size(); next = oracle::derived(n, R))
      R = next;
    fail(same(soluble_residual(G), R));

    PermGroup H(n, {oracle::random_perm(n, rng), oracle::random_perm(n, rng)});
    Perm c = G.random_element(rng);
    PermGroup C(n, {c});
    oracle::ElemSet cap, cent;
    auto HS = as_set(H);
    for (auto const &g : S) {
      if (HS.count(g))
        cap.insert(g);
      if (g * c == c * g)
        cent.insert(g);
    }
    fail(same(intersection(G, H), cap));
    fail(same(centralizer(G, C), cent));

    if (S.size() <= 720) {
      fail(same(soluble_radical(G), oracle::radical(n, S)));
      fail(normal_subgroups(G).size() == oracle::normal_subgroups(n, S).size());
    }
  }
  cx.expect_eq("permutation-group operators against enumeration (" + std::to_string(groups) +
                   " random groups)",
               "oracle", 0, bad);
}

}  // namespace

int main()
{
  auto scenarios = bundled_scenarios();
  auto results = run_scenarios(scenarios, 1);
  {
    Scenario extra{"operators:brute_force", "operators", 7, 0, brute_force_operators};
    results.push_back(run_scenario(extra));
  }

  bool all = true;
  for (auto const &c : kCriteria) {
    bool pass = true;
    double total = 0;
    std::size_t count = 0;
    std::vector<std::string> notes;
    for (auto const &r : results) {
      if (r.criterion != c.id)
        continue;
      ++count;
      total += r.seconds;
      if (!r.pass())
        pass = false;
      if (r.time_limit > 0 && r.seconds > r.time_limit) {
        pass = false;
        notes.push_back(r.name + " took " + std::to_string(r.seconds) + " s");
      }
      if (r.error_code != 0)
        notes.push_back(r.name + ": error: " + r.error);
      for (auto const &k : r.checks)
        if (!k.pass)
          notes.push_back(r.name + ": " + k.anchor + ": expected " + k.expected + ", actual " +
                          k.actual);
    }
    if (c.total_limit > 0 && total > c.total_limit) {
      pass = false;
      notes.push_back("total time " + std::to_string(total) + " s over the limit");
    }
    if (count == 0)
      pass = false;
    all = all && pass;
    std::printf("criterion %d: %s  %s (%zu scenarios, %.2f s)\n", c.id, pass ? "PASS" : "FAIL",
                c.title, count, total);
    for (auto const &n : notes)
      std::fprintf(stderr, "  criterion %d: %s\n", c.id, n.c_str());
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
