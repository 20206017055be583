#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "gtree/blocktrans.hpp"
#include "gtree/catalog.hpp"
#include "gtree/config.hpp"
#include "gtree/error.hpp"
#include "gtree/fingerprint.hpp"
#include "gtree/structure.hpp"
#include "gtree/treelocal.hpp"
#include "gtree/verify.hpp"

namespace gtree {

bool ScenarioResult::pass() const
{
  if (error_code != 0)
    return false;
  for (auto const &c : checks)
    if (!c.pass)
      return false;
  return true;
}

void ScenarioContext::expect_eq(const std::string &anchor, const std::string &kind,
                                std::uint64_t expected, std::uint64_t actual)
{
  if (perturb_)
    ++expected;
  r_.checks.push_back(
      {anchor, kind, std::to_string(expected), std::to_string(actual), expected == actual});
}

void ScenarioContext::expect_eq(const std::string &anchor, const std::string &kind,
                                const std::string &expected, const std::string &actual)
{
  std::string e = perturb_ ? expected + "'" : expected;
  r_.checks.push_back({anchor, kind, e, actual, e == actual});
}

void ScenarioContext::expect_true(const std::string &anchor, const std::string &kind, bool actual)
{
  bool e = !perturb_;
  r_.checks.push_back({anchor, kind, e ? "true" : "false", actual ? "true" : "false", e == actual});
}

void ScenarioContext::expect_false(const std::string &anchor, const std::string &kind,
                                   bool actual)
{
  bool e = perturb_;
  r_.checks.push_back({anchor, kind, e ? "true" : "false", actual ? "true" : "false", e == actual});
}

namespace {

bool matches(const PermGroup &G, const PermGroup &target)
{
  return same_structure(G, abstract_fingerprint(target)) != Verdict::mismatch;
}

// Systems are loaded once per process and shared read-only across workers.
const EdgeSystem &bundled(const std::string &stem)
{
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<EdgeSystem>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[stem];
  if (!slot)
    slot = std::make_unique<EdgeSystem>(load_system(bundled_system(stem)));
  return *slot;
}

void delta_star_scenario(ScenarioContext &cx, std::uint32_t q, std::size_t want)
{
  Sl25Embedding e = exceptional_sl25_affine_search(q);
  cx.seed("sl25_search_seed", *e.entry.seed);
  cx.seed("sl25_search_attempts", e.attempts);
  cx.expect_eq("delta* of the SL(2,5) affine group, q=" + std::to_string(q), "exact", want,
               delta_star(e.entry.group));
}

struct BbtRow {
  const char *name, *group, *spec;
  std::size_t blocks, block_size;
};

void bbt_scenario(ScenarioContext &cx, const BbtRow &row)
{
  PermGroup F = catalog(row.group).group;
  PermGroup P = point_stabilizer_subgroup(F, row.spec);
  TwoBBTReport r = two_bbt_from_subgroup(F, stabilizer(F, {0}), P);
  std::string a = std::string("2-bbt action ") + row.name;
  cx.expect_true(a + ": 2-by-block-transitive", "exact", r.k2);
  cx.expect_eq(a + ": degree", "exact", row.blocks * row.block_size, r.degree);
  cx.expect_eq(a + ": blocks", "exact", row.blocks, r.blocks);
  cx.expect_eq(a + ": block size", "exact", row.block_size, r.block_size);
}

void exceptional_scenario(ScenarioContext &cx)
{
  const EdgeSystem &s = bundled("exceptional");
  EdgeInvariants inv = edge_invariants(s);
  const std::string a = "exceptional system: ";
  cx.expect_eq(a + "|B:K_0|", "exact", 6, s.B.order() / inv.K[0].order());
  cx.expect_true(a + "K_0 ~ C5:C4", "exact", matches(inv.K[0], catalog("affine:5:1:mult").group));
  cx.expect_true(a + "K_1 ~ Sym(4)", "exact", matches(inv.K[1], symmetric(4).group));
  cx.expect_true(a + "K'_1 ~ Alt(4)", "exact", matches(inv.Kp[1], alternating(4).group));
  cx.expect_eq(a + "|L_0|", "exact", 2400, inv.L[0].order());
  cx.expect_eq(a + "|L_0:L'_0|", "exact", 2, inv.L[0].order() / inv.Lp[0].order());
  cx.expect_eq(a + "|L_1|", "exact", 960, inv.L[1].order());
  cx.expect_true(a + "L_1 = L'_1", "exact", same_group(inv.L[1], inv.Lp[1]));
  cx.expect_true(a + "sufficient check", "exact", sufficient_check(s, inv));

  std::array<LocalActionSeries, 2> series{lambda_series(s, 0), lambda_series(s, 1)};
  cx.expect_true(a + "boundary-2-transitive", "exact", membership_HT(s, series).in_HT);
  std::array<ThetaGrid, 2> th{theta_limit(s, 0), theta_limit(s, 1)};
  const std::uint64_t want[2] = {100, 48};
  for (int t = 0; t < 2; ++t) {
    std::string ty = " (type " + std::to_string(t) + ")";
    const PermGroup &Fw = s.at(t).stabilizer_at(s.base[t]);
    cx.expect_eq(a + "|Theta|" + ty, "exact", want[t], th[t].limit.order());
    cx.expect_true(a + "Theta = ker psi" + ty, "exact", th[t].equals_kernel);
    cx.expect_true(a + "Theta = soluble radical" + ty, "exact",
                   same_group(th[t].limit, soluble_radical(Fw)));
    cx.note("theta_hull_size_t" + std::to_string(t), th[t].cells.back().stats.hull_size);
  }
  Classification c = classify_dichotomy(s, series, th);
  cx.expect_eq(a + "dichotomy case", "exact", "case_ii", to_string(c.verdict));
  cx.expect_eq(a + "Lambda_1 ~ F16:GammaL(1,16)", "exact", "W:GammaL(1,16)",
               c.types[1].lambda_match);
  bool in_set = c.types[0].lambda_match == "W:(SL(2,3):C4)" ||
                c.types[0].lambda_match == "W:(SL(2,3):C2)";
  cx.expect_true(a + "Lambda_0 in the two-element candidate set", "exact", in_set);
  cx.note("lambda0_limit", c.types[0].lambda_match);
  cx.note("lambda0_limit_order", series[0].limit().order());
}

void small_plane_scenario(ScenarioContext &cx, const std::string &stem)
{
  const EdgeSystem &s = bundled(stem);
  const std::string a = "small-plane system " + stem + ": ";
  EdgeInvariants inv = edge_invariants(s);
  std::array<LocalActionSeries, 2> series{lambda_series(s, 0), lambda_series(s, 1)};
  cx.expect_true(a + "boundary-2-transitive", "exact", membership_HT(s, series).in_HT);
  cx.expect_eq(a + "|L'_1| (L'_1 trivial)", "exact", 1, inv.Lp[1].order());
  cx.expect_false(a + "sufficient check", "exact", sufficient_check(s, inv));
  cx.note("Kp0_order", inv.Kp[0].order());
  cx.note("Lp1_order", inv.Lp[1].order());

  const PermGroup &Fw = s.at(0).stabilizer_at(s.base[0]);
  cx.expect_eq(a + "|F_0(w):Lambda^2_0| = d_1 - 1", "exact", s.degree(1) - 1,
               Fw.order() / series[0].lambda[1].order());
  bool proper = true;
  for (std::size_t k = 2; k <= series[0].size(); ++k)
    proper = proper && series[0].lambda[k - 1].order() < Fw.order();
  cx.expect_true(a + "Lambda^k_0 proper for k >= 2", "exact", proper);
  cx.note("lambda0_orders_to_k", series[0].size());

  std::array<ThetaGrid, 2> th{theta_limit(s, 0), theta_limit(s, 1)};
  Classification c = classify_dichotomy(s, series, th);
  cx.expect_eq(a + "dichotomy case", "exact", "case_i", to_string(c.verdict));
  cx.expect_true(a + "Theta_0 contains the soluble residual", "exact",
                 is_subgroup(soluble_residual(Fw), th[0].limit));
}

void identity_scenario(ScenarioContext &cx, const EdgeSystem &s, std::size_t kmax)
{
  const std::string a = s.name + ": ";
  std::uint64_t line = 0, divides = 0, goursat = 0, lam = 0, del = 0, theta = 0, normal = 0;
  std::uint64_t asserted = 0, intransitive = 0;
  for (int t = 0; t < 2; ++t) {
    LocalActionSeries L = lambda_series(s, t, kmax);
    for (std::size_t k = 0; k + 1 < L.size(); ++k) {
      lam += !is_subgroup(L.lambda[k + 1], L.lambda[k]);
      del += !is_subgroup(L.delta[k], L.delta[k + 1]);
    }
    for (std::size_t k = 0; k < L.size(); ++k)
      normal += !is_normal(L.delta[k], L.lambda[k]);
    for (std::size_t k = 1; k + 1 <= L.size(); ++k) {
      try {
        GoursatReport g = goursat_report(s, L, k);
        if (g.far_transitive) {
          ++asserted;
          line += !g.line_identity;
          divides += !g.divides;
        } else {
          ++intransitive;
        }
      } catch (const InvariantError &e) {
        std::string what = e.what();
        if (what.find("quotients") != std::string::npos)
          ++goursat;
        else
          ++line;
      }
    }
    ThetaGrid g = theta_limit(s, t);
    theta += !g.monotone;
    theta += !g.subnormal;
  }
  cx.expect_eq(a + "line-index identity violations", "identity", 0, line);
  cx.expect_eq(a + "divisibility violations", "identity", 0, divides);
  cx.expect_eq(a + "Goursat quotient violations", "identity", 0, goursat);
  cx.expect_eq(a + "Lambda chain violations", "identity", 0, lam);
  cx.expect_eq(a + "Delta chain violations", "identity", 0, del);
  cx.expect_eq(a + "Delta normal in Lambda violations", "identity", 0, normal);
  cx.expect_eq(a + "Theta chain violations", "identity", 0, theta);
  cx.note("line_index_cases", asserted);
  cx.note("intransitive_far_end_cases", intransitive);
}

void oracle_scenario(ScenarioContext &cx)
{
  const EdgeSystem &fano = bundled("fano");
  BallGroup ball = ball_group_bruteforce(fano, 1, 2);
  cx.expect_eq("Fano ball of radius 2: order", "oracle", 10368, ball.group.order());
  for (int t = 0; t < 2; ++t) {
    BallGroup b = t == 0 ? ball : ball_group_bruteforce(fano, 0, 2);
    PathValues v = ball_path_groups(fano, t, b);
    LocalActionSeries L = lambda_series(fano, t, 2);
    std::string ty = " (type " + std::to_string(t) + ")";
    cx.expect_true("Fano ball: Lambda^2 matches the message recursion" + ty, "oracle",
                   same_group(v.lambda, L.lambda[1]));
    cx.expect_true("Fano ball: Delta^2 matches the message recursion" + ty, "oracle",
                   same_group(v.delta, L.delta[1]));
  }

  const EdgeSystem &triv = bundled("trivialB");
  const std::uint64_t F[2] = {triv.at(0).group().order(), triv.at(1).group().order()};
  const std::uint64_t Fw[2] = {F[0] / triv.degree(0), F[1] / triv.degree(1)};
  for (int r = 0; r < 2; ++r) {
    cx.expect_eq("trivial edge group ball radius 1 (root type " + std::to_string(r) + ")",
                 "oracle", F[r], ball_group_bruteforce(triv, r, 1).group.order());
    std::uint64_t want = F[r];
    for (std::size_t i = 0; i < triv.degree(r); ++i)
      want *= Fw[1 - r];
    cx.expect_eq("trivial edge group ball radius 2 (root type " + std::to_string(r) + ")",
                 "oracle", want, ball_group_bruteforce(triv, r, 2).group.order());
  }
}

const char *const kTwoTransitive[] = {
    "sym:3",        "sym:4",         "sym:5",        "sym:6",          "sym:7",
    "alt:4",        "alt:5",         "alt:6",        "alt:7",          "psl:2:4",
    "psl:2:5",      "psl:2:7",       "psl:2:8",      "psl:2:9",        "psl:2:11",
    "pgl:2:5",      "pgl:2:7",       "pgammal:2:8",  "pgammal:2:9",    "psl:3:2",
    "psl:3:3",      "psl:3:4",       "pgammal:3:2",  "pgammal:3:3",    "pgammal:3:4",
    "pgammal:3:5",  "m11",           "affine:8:1:gammal1", "affine:9:1:gammal1", "affine:16:1:gammal1",
    "affine:5:1:mult", "affine:3:2:gl", "affine:2:3:gl", "affine:2:4:sl", "sl25affine:11"};

void operator_scenario(ScenarioContext &cx)
{
  for (const char *name : kTwoTransitive) {
    PermGroup F = catalog(name).group;
    PermGroup Fw = stabilizer(F, {0});
    std::string a = std::string(name) + ": ";
    cx.expect_true(a + "2-transitive", "exact", transitivity_degree(F) >= 2);
    cx.expect_true(a + "kappa(F(w)) <= 1", "exact", kappa_class(Fw) != Kappa::many);
    cx.expect_eq(a + "radical transitive iff soluble", "exact",
                 is_soluble(Fw) ? "transitive" : "intransitive",
                 transitive_off(soluble_radical(Fw), 0) ? "transitive" : "intransitive");
  }
  const std::pair<const char *, std::set<std::size_t>> planes[] = {
      {"pgammal:3:2", {1, 3, 6}}, {"pgammal:3:3", {1, 4, 12}}};
  for (auto const &[name, want] : planes) {
    PermGroup F = catalog(name).group;
    std::set<std::size_t> seen;
    for (auto const &N : normal_subgroups(stabilizer(F, {0})))
      seen.insert(normal_orbit_count(F, 0, N));
    auto show = [](const std::set<std::size_t> &x) {
      std::string out = "{";
      for (auto v : x)
        out += (out.size() > 1 ? "," : "") + std::to_string(v);
      return out + "}";
    };
    cx.expect_eq(std::string(name) + ": normal-subgroup orbit counts", "exact", show(want),
                 show(seen));
  }
}

void arcpair_scenario(ScenarioContext &cx)
{
  TreeParams tp(3, 3);
  auto check = [&](const std::string &label, const Arc &x, const Arc &y, ArcPair want) {
    cx.expect_eq("arc pair " + label, "exact", to_string(want),
                 to_string(classify_arc_pair(tp, x, y)));
  };
  check("(a1,a2)", {{{1, 2, 0}}, {{1, 2}}}, {{{0, 2, 1}}, {{0, 2}}}, ArcPair::elliptic);
  check("(b1,b2)", {{{1}}, {{}}}, {{{0}}, {{0, 1}}}, ArcPair::hyperbolic);
  check("(c1,c2)", {{{0}}, {{0, 1}}}, {{{1}}, {{1, 2}}}, ArcPair::elliptic);
}

}  // namespace

std::vector<Scenario> bundled_scenarios()
{
  std::vector<Scenario> out;
  const std::pair<std::uint32_t, std::size_t> ds[] = {{9, 2}, {11, 1}, {19, 3}, {29, 7}, {59, 29}};
  for (auto [q, want] : ds)
    out.push_back({"delta_star:q" + std::to_string(q), "delta_star", 1, 120,
                   [q, want](ScenarioContext &cx) { delta_star_scenario(cx, q, want); }});

  static const BbtRow rows[] = {
      {"M11 on Alt(6)", "m11", "derived", 11, 2},
      {"PGammaL(3,2) on W:C3", "pgammal:3:2", "derived", 7, 2},
      {"PGammaL(3,3) on W:SL(2,3)", "pgammal:3:3", "derived", 13, 2},
      {"PGammaL(3,4) on W:GammaL(1,16)", "pgammal:3:4", "socle-normalizer:5", 21, 6},
      {"PGammaL(3,5) on W:SL(2,5)", "pgammal:3:5", "residual", 31, 4},
      {"PGammaL(3,5) on W:(SL(2,3):C4)", "pgammal:3:5", "socle-normalizer:2", 31, 5},
  };
  for (auto const &row : rows)
    out.push_back({std::string("bbt:") + row.name, "bbt", 2, 60,
                   [&row](ScenarioContext &cx) { bbt_scenario(cx, row); }});

  out.push_back({"exceptional", "exceptional", 3, 300, exceptional_scenario});

  for (auto stem : {"m11", "fano", "pgammal33"})
    out.push_back({std::string("small_plane:") + stem, "small_planes", 4, 120,
                   [stem](ScenarioContext &cx) { small_plane_scenario(cx, stem); }});

  for (auto const &stem : bundled_system_names())
    out.push_back({"identities:" + stem, "identities", 5, 0,
                   [stem](ScenarioContext &cx) { identity_scenario(cx, bundled(stem), 6); }});
  for (std::uint64_t seed : {1, 2, 3})
    out.push_back({"identities:random:" + std::to_string(seed), "identities", 5, 0,
                   [seed](ScenarioContext &cx) {
                     cx.seed("system_seed", seed);
                     identity_scenario(cx, random_edge_system(seed), 6);
                   }});

  out.push_back({"oracle", "oracle", 6, 120, oracle_scenario});
  out.push_back({"operators", "operators", 7, 0, operator_scenario});
  out.push_back({"arcpairs", "arcpairs", 8, 1, arcpair_scenario});
  return out;
}

std::vector<Scenario> filter_scenarios(const std::vector<Scenario> &all, const std::string &tag)
{
  if (tag.empty())
    return all;
  std::vector<Scenario> out;
  for (auto const &s : all)
    if (s.tag == tag || s.name == tag)
      out.push_back(s);
  if (out.empty())
    throw ArgumentError("no scenario matches '" + tag + "'");
  return out;
}

ScenarioResult run_scenario(const Scenario &s, bool perturb)
{
  ScenarioResult r;
  r.name = s.name;
  r.tag = s.tag;
  r.criterion = s.criterion;
  r.time_limit = s.time_limit;
  ScenarioContext cx(r, perturb);
  auto start = std::chrono::steady_clock::now();
  try {
    s.run(cx);
  } catch (const ArgumentError &e) {
    r.error_code = 2;
    r.error = e.what();
  } catch (const BudgetError &e) {
    r.error_code = 3;
    r.error = e.what();
  } catch (const std::exception &e) {
    r.error_code = 1;
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<ScenarioResult> run_scenarios(const std::vector<Scenario> &scenarios,
                                          std::size_t threads,
                                          const std::vector<std::string> &perturb)
{
  std::vector<ScenarioResult> out(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < scenarios.size();) {
      auto const &s = scenarios[i];
      bool p = std::find(perturb.begin(), perturb.end(), s.name) != perturb.end() ||
               std::find(perturb.begin(), perturb.end(), s.tag) != perturb.end();
      out[i] = run_scenario(s, p);
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, scenarios.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < threads; ++i)
    pool.emplace_back(worker);
  for (auto &th : pool)
    th.join();
  return out;
}

nlohmann::json to_json(const ScenarioResult &r, bool with_timing)
{
  nlohmann::json j;
  j["name"] = r.name;
  j["tag"] = r.tag;
  j["criterion"] = r.criterion;
  j["pass"] = r.pass();
  j["checks"] = nlohmann::json::array();
  for (auto const &c : r.checks)
    j["checks"].push_back({{"anchor", c.anchor},
                           {"kind", c.kind},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"pass", c.pass}});
  j["seeds"] = r.seeds;
  j["notes"] = r.notes;
  if (r.error_code != 0)
    j["error"] = {{"code", r.error_code}, {"message", r.error}};
  if (with_timing)
    j["seconds"] = r.seconds;
  return j;
}

}  // namespace gtree
