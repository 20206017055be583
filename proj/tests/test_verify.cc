#include <gtest/gtest.h>

#include <set>

#include "gtree/error.hpp"
#include "gtree/verify.hpp"

using namespace gtree;

TEST(Verify, ScenarioListIsWellFormed)
{
  auto all = bundled_scenarios();
  std::set<std::string> names;
  std::set<int> criteria;
  for (auto const &s : all) {
    EXPECT_TRUE(names.insert(s.name).second) << s.name;
    EXPECT_FALSE(s.tag.empty());
    criteria.insert(s.criterion);
  }
  EXPECT_EQ(criteria, (std::set<int>{1, 2, 3, 4, 5, 6, 7, 8}));
}

TEST(Verify, FilterSelectsByTag)
{
  auto only = filter_scenarios(bundled_scenarios(), "delta_star");
  EXPECT_EQ(only.size(), 5u);
  for (auto const &s : only)
    EXPECT_EQ(s.tag, "delta_star");
  EXPECT_EQ(filter_scenarios(bundled_scenarios(), "arcpairs").size(), 1u);
  EXPECT_THROW(filter_scenarios(bundled_scenarios(), "nothing"), ArgumentError);
}

TEST(Verify, PerturbedExpectationFailsAndNamesAnchor)
{
  auto s = filter_scenarios(bundled_scenarios(), "arcpairs");
  ScenarioResult good = run_scenario(s[0]);
  EXPECT_TRUE(good.pass());
  auto bad = run_scenarios(s, 2, {"arcpairs"});
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_FALSE(bad[0].pass());
  bool named = false;
  for (auto const &c : bad[0].checks)
    named = named || (!c.pass && c.anchor.find("(b1,b2)") != std::string::npos);
  EXPECT_TRUE(named);
}

TEST(Verify, ReportsAreDeterministic)
{
  auto s = filter_scenarios(bundled_scenarios(), "bbt");
  auto a = run_scenarios(s, 3), b = run_scenarios(s, 1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(to_json(a[i], false).dump(), to_json(b[i], false).dump());
}

TEST(Verify, ErrorsBecomeFailures)
{
  Scenario boom{"boom", "x", 0, 0, [](ScenarioContext &) { throw BudgetError("too big"); }};
  ScenarioResult r = run_scenario(boom);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.error_code, 3);
  Scenario bad{"bad", "x", 0, 0, [](ScenarioContext &) { throw ArgumentError("bad"); }};
  EXPECT_EQ(run_scenario(bad).error_code, 2);
}

TEST(Verify, SeedsAreRecorded)
{
  auto s = filter_scenarios(bundled_scenarios(), "delta_star:q11");
  ScenarioResult r = run_scenario(s[0]);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.seeds.contains("sl25_search_seed"));
}
