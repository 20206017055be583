#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gtree {

// One compared value. `kind` says how the value is checked: "exact" (a
// published number), "identity" (a relation among computed groups) or
// "oracle" (agreement with an independent enumeration).
struct Check {
  std::string anchor;
  std::string kind;
  std::string expected, actual;
  bool pass = false;
};

struct ScenarioResult {
  std::string name, tag;
  int criterion = 0;
  std::vector<Check> checks;
  double seconds = 0;
  double time_limit = 0;  // seconds, 0 for none
  nlohmann::json seeds = nlohmann::json::object();
  nlohmann::json notes = nlohmann::json::object();
  // Set when the scenario threw: 2 for bad input, 3 for budget, 1 otherwise.
  int error_code = 0;
  std::string error;

  bool pass() const;
};

// Collects checks while a scenario runs.
class ScenarioContext {
 public:
  explicit ScenarioContext(ScenarioResult &r, bool perturb = false) : r_(r), perturb_(perturb) {}
  void expect_eq(const std::string &anchor, const std::string &kind, std::uint64_t expected,
                 std::uint64_t actual);
  void expect_eq(const std::string &anchor, const std::string &kind,
                 const std::string &expected, const std::string &actual);
  void expect_true(const std::string &anchor, const std::string &kind, bool actual);
  void expect_false(const std::string &anchor, const std::string &kind, bool actual);
  void seed(const std::string &key, std::uint64_t value) { r_.seeds[key] = value; }
  void note(const std::string &key, nlohmann::json value) { r_.notes[key] = std::move(value); }

 private:
  ScenarioResult &r_;
  bool perturb_;
};

struct Scenario {
  std::string name, tag;
  int criterion = 0;
  double time_limit = 0;
  std::function<void(ScenarioContext &)> run;
};

// The bundled verification suite, in a fixed order.
std::vector<Scenario> bundled_scenarios();
std::vector<Scenario> filter_scenarios(const std::vector<Scenario> &all, const std::string &tag);

// `perturb` names scenarios whose expected values are replaced by a wrong
// one, to exercise the failure path.
ScenarioResult run_scenario(const Scenario &s, bool perturb = false);
// Runs on a pool of `threads` workers; results keep the input order.
std::vector<ScenarioResult> run_scenarios(const std::vector<Scenario> &scenarios,
                                          std::size_t threads,
                                          const std::vector<std::string> &perturb = {});

nlohmann::json to_json(const ScenarioResult &r, bool with_timing = true);

}  // namespace gtree
