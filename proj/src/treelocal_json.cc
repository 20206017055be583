#include "gtree/treelocal.hpp"

namespace gtree {

namespace {

nlohmann::json orders(const std::vector<PermGroup> &gs)
{
  auto j = nlohmann::json::array();
  for (auto const &g : gs)
    j.push_back(g.order());
  return j;
}

}  // namespace

nlohmann::json to_json(const EdgeInvariants &inv)
{
  nlohmann::json j;
  for (int t = 0; t < 2; ++t) {
    auto &o = j["type_" + std::to_string(t)];
    o["R"] = inv.R[t].order();
    o["K"] = to_json(abstract_fingerprint(inv.K[t]));
    o["K_prime"] = to_json(abstract_fingerprint(inv.Kp[t]));
    o["L"] = to_json(fingerprint(inv.L[t]));
    o["L_prime"] = to_json(fingerprint(inv.Lp[t]));
  }
  return j;
}

nlohmann::json to_json(const LocalActionSeries &s)
{
  nlohmann::json j;
  j["type"] = s.type;
  j["lambda_orders"] = orders(s.lambda);
  j["delta_orders"] = orders(s.delta);
  j["delta_orbits"] = s.delta_orbits;
  j["quotient_orders"] = s.quotient_orders;
  j["stable_k"] = s.stable_k;
  j["stable_k_delta"] = s.stable_k_delta;
  j["fixpoint_rounds"] = s.fixpoint_rounds;
  j["fixpoint_rounds_delta"] = s.fixpoint_rounds_delta;
  j["round_cap"] = s.round_cap;
  j["limit"] = to_json(fingerprint(s.limit()));
  if (s.first_intransitive) {
    j["first_intransitive"] = *s.first_intransitive;
    j["note"] = "values past first_intransitive depend on the colouring; informational only";
  } else {
    j["first_intransitive"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const GoursatReport &g)
{
  return {{"type", g.type},
          {"k", g.k},
          {"near_quotient", g.near_quotient},
          {"far_quotient", g.far_quotient},
          {"index", g.index},
          {"far_delta_orbits", g.far_delta_orbits},
          {"far_transitive", g.far_transitive},
          {"divides", g.divides},
          {"line_identity", g.line_identity}};
}

nlohmann::json to_json(const Membership &m)
{
  nlohmann::json j;
  j["verdict"] = m.in_HT ? "in_HT" : "not_in_HT";
  if (m.witness)
    j["witness"] = {{"k", m.witness->first}, {"t", m.witness->second}};
  else
    j["witness"] = nullptr;
  j["checked_to"] = m.checked_to;
  return j;
}

nlohmann::json to_json(const ThetaGrid &g)
{
  nlohmann::json j;
  j["type"] = g.type;
  auto cells = nlohmann::json::array();
  for (auto const &c : g.cells)
    cells.push_back({{"r", c.r},
                     {"i", c.i},
                     {"order", c.group.order()},
                     {"nodes", c.stats.nodes},
                     {"hull_size", c.stats.hull_size}});
  j["cells"] = cells;
  j["limit"] = to_json(fingerprint(g.limit));
  j["monotone"] = g.monotone;
  j["stable"] = g.stable;
  j["subnormal"] = g.subnormal;
  j["equals_kernel"] = g.equals_kernel;
  return j;
}

nlohmann::json to_json(const Classification &c)
{
  nlohmann::json j;
  j["verdict"] = to_string(c.verdict);
  for (int t = 0; t < 2; ++t) {
    auto const &p = c.types[t];
    j["type_" + std::to_string(t)] = {{"theta_order", p.theta_order},
                                      {"residual_order", p.residual_order},
                                      {"radical_order", p.radical_order},
                                      {"contains_residual", p.contains_residual},
                                      {"within_radical", p.within_radical},
                                      {"lambda", to_json(p.lambda)},
                                      {"lambda_match", p.lambda_match},
                                      {"lambda_verdict", to_string(p.lambda_verdict)}};
  }
  return j;
}

}  // namespace gtree
