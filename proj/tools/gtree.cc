#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "gtree/blocktrans.hpp"
#include "gtree/catalog.hpp"
#include "gtree/config.hpp"
#include "gtree/error.hpp"
#include "gtree/fingerprint.hpp"
#include "gtree/structure.hpp"
#include "gtree/treelocal.hpp"
#include "gtree/verify.hpp"

using namespace gtree;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, budget = 3 };

std::string timestamp()
{
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

json envelope(const std::string &command)
{
  return {{"schema", 1}, {"command", command}, {"timestamp", timestamp()}};
}

void emit(const json &j, const std::string &path)
{
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw ArgumentError("cannot write " + path);
  out << j.dump(2) << "\n";
}

int cmd_catalog(const std::string &name)
{
  CatalogEntry e = catalog(name);
  json j = envelope("catalog");
  j["name"] = e.name;
  j["family"] = e.family;
  j["degree"] = e.group.degree();
  j["order"] = e.group.order();
  j["transitivity_degree"] = transitivity_degree(e.group);
  j["point_stabilizer"] = to_json(fingerprint(stabilizer(e.group, {0})));
  if (e.seed)
    j["seed"] = *e.seed;
  emit(j, "");
  return ok;
}

struct SystemOptions {
  std::string path, json_out;
  std::size_t kmax = 0;
  std::uint64_t theta_budget = 10000;
  bool oracle = false;
};

// Fills `report` step by step so a budget failure still leaves the parts
// computed so far.
int run_system(const SystemOptions &o, json &report)
{
  EdgeSystem sys = load_system(o.path);
  report["system"] = {{"name", sys.name},
                      {"degrees", {sys.degree(0), sys.degree(1)}},
                      {"edge_group_order", sys.B.order()}};
  EdgeInvariants inv = edge_invariants(sys);
  report["edge_invariants"] = to_json(inv);
  report["necessary_check"] = necessary_check(sys, inv);
  report["sufficient_check"] = sufficient_check(sys, inv);

  std::array<LocalActionSeries, 2> series{lambda_series(sys, 0, o.kmax),
                                          lambda_series(sys, 1, o.kmax)};
  report["series"] = {to_json(series[0]), to_json(series[1])};
  json goursat = json::array();
  for (int t = 0; t < 2; ++t)
    for (std::size_t k = 1; k + 1 <= series[t].size(); ++k)
      goursat.push_back(to_json(goursat_report(sys, series[t], k)));
  report["goursat"] = goursat;
  Membership m = membership_HT(sys, series);
  report["membership"] = to_json(m);

  std::array<ThetaGrid, 2> th{theta_limit(sys, 0, o.theta_budget),
                              theta_limit(sys, 1, o.theta_budget)};
  report["theta"] = {to_json(th[0]), to_json(th[1])};
  if (m.in_HT)
    report["classification"] = to_json(classify_dichotomy(sys, series, th));
  else
    report["classification"] = nullptr;

  int code = ok;
  if (o.oracle) {
    json orc = json::array();
    for (int t = 0; t < 2; ++t) {
      std::size_t kmax = std::min<std::size_t>(3, series[t].size());
      for (std::size_t k = 1; k <= kmax; ++k) {
        json row = {{"type", t}, {"k", k}};
        try {
          PathValues v = path_portrait_bruteforce(sys, t, k);
          bool agree = same_group(v.lambda, series[t].lambda[k - 1]) &&
                       same_group(v.delta, series[t].delta[k - 1]);
          row["agree"] = agree;
          if (!agree)
            code = failed;
        } catch (const BudgetError &) {
          row["agree"] = "budget";
        }
        orc.push_back(row);
      }
    }
    report["oracle"] = orc;
  }
  return code;
}

int cmd_system(const SystemOptions &o)
{
  json report = envelope("system");
  report["config"] = o.path;
  int code = ok;
  try {
    code = run_system(o, report);
  } catch (const BudgetError &e) {
    report["error"] = {{"code", budget}, {"message", e.what()}};
    code = budget;
  }
  emit(report, o.json_out);
  if (!o.json_out.empty())
    std::cerr << "wrote " << o.json_out << "\n";
  return code;
}

int cmd_check2bbt(const std::string &group, const std::string &spec)
{
  PermGroup F = catalog(group).group;
  PermGroup P = point_stabilizer_subgroup(F, spec);
  TwoBBTReport r = two_bbt_from_subgroup(F, stabilizer(F, {0}), P);
  r.delta_star = delta_star(F);
  json j = envelope("check2bbt");
  j["group"] = group;
  j["pointstab"] = spec;
  j["report"] = to_json(r);
  emit(j, "");
  return r.k2 ? ok : failed;
}

struct VerifyOptions {
  std::string filter, json_out;
  std::vector<std::string> perturb;
  std::size_t threads = 0;
};

int cmd_verify(const VerifyOptions &o)
{
  auto scenarios = filter_scenarios(bundled_scenarios(), o.filter);
  std::size_t threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  auto results = run_scenarios(scenarios, threads, o.perturb);

  std::printf("%-4s %-42s %-6s %9s\n", "crit", "scenario", "result", "seconds");
  bool any_fail = false, only_budget = true;
  for (auto const &r : results) {
    std::printf("%-4d %-42s %-6s %9.2f\n", r.criterion, r.name.c_str(), r.pass() ? "pass" : "FAIL",
                r.seconds);
    if (!r.pass()) {
      any_fail = true;
      only_budget = only_budget && r.error_code == budget;
    }
  }
  for (auto const &r : results) {
    if (r.pass())
      continue;
    std::printf("\n%s:\n", r.name.c_str());
    if (r.error_code != 0)
      std::printf("  error (%d): %s\n", r.error_code, r.error.c_str());
    for (auto const &c : r.checks)
      if (!c.pass)
        std::printf("  [%s] %s\n    expected %s\n    actual   %s\n", c.kind.c_str(),
                    c.anchor.c_str(), c.expected.c_str(), c.actual.c_str());
  }
  if (!o.json_out.empty()) {
    json j = envelope("verify-paper");
    j["filter"] = o.filter;
    j["scenarios"] = json::array();
    for (auto const &r : results)
      j["scenarios"].push_back(to_json(r, false));
    j["pass"] = !any_fail;
    emit(j, o.json_out);
  }
  std::size_t passed = std::count_if(results.begin(), results.end(),
                                     [](const ScenarioResult &r) { return r.pass(); });
  std::printf("\n%zu/%zu scenarios passed\n", passed, results.size());
  if (!any_fail)
    return ok;
  return only_budget ? budget : failed;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"gtree: local actions of boundary-2-transitive tree groups"};
  app.require_subcommand(1);

  std::string catalog_name;
  auto *cat = app.add_subcommand("catalog", "Print a catalogue group and its point stabilizer");
  cat->add_option("name", catalog_name, "e.g. m11, pgammal:3:4, sym:5")->required();

  SystemOptions so;
  auto *sys = app.add_subcommand("system", "Analyse an edge system configuration");
  sys->add_option("file", so.path, "system configuration")->required();
  sys->add_option("--kmax", so.kmax, "compute the series at least to this path length");
  sys->add_option("--theta-budget", so.theta_budget, "node budget per theta cell");
  sys->add_flag("--oracle", so.oracle, "cross-check short paths by brute force");
  sys->add_option("--json", so.json_out, "write the report here instead of stdout");

  std::string group, spec;
  auto *bbt = app.add_subcommand("check2bbt", "Test a coset action for 2-by-block-transitivity");
  bbt->add_option("--group", group, "catalogue name")->required();
  bbt->add_option("--pointstab", spec, "subgroup of F(0): derived, residual, sylow:p, ...")
      ->required();

  VerifyOptions vo;
  auto *ver = app.add_subcommand("verify-paper", "Run the bundled verification scenarios");
  ver->add_option("--filter", vo.filter, "scenario tag or name");
  ver->add_option("--threads", vo.threads, "worker threads (default: all cores)");
  ver->add_option("--json", vo.json_out, "write a JSON report");
  ver->add_option("--perturb", vo.perturb, "corrupt the expectations of a scenario or tag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*cat)
      return cmd_catalog(catalog_name);
    if (*sys)
      return cmd_system(so);
    if (*bbt)
      return cmd_check2bbt(group, spec);
    if (*ver)
      return cmd_verify(vo);
  } catch (const ArgumentError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const BudgetError &e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return budget;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return failed;
  }
  return usage;
}
