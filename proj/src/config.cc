#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "gtree/catalog.hpp"
#include "gtree/config.hpp"
#include "gtree/error.hpp"
#include "gtree/fingerprint.hpp"
#include "gtree/structure.hpp"

namespace gtree {

namespace {

std::string trim(const std::string &s)
{
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t factorial(std::size_t n)
{
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i)
    f *= i;
  return f;
}

// X -> B through the action on X/Y, if that action is faithful onto a copy of B.
std::optional<GroupMorphism> try_subgroup(const PermGroup &X, const PermGroup &Y,
                                          const PermGroup &B)
{
  std::size_t n = B.degree();
  if (X.order() != Y.order() * n)
    return std::nullopt;
  CosetAction ca = coset_action(X, Y);
  if (ca.image.order() != B.order())
    return std::nullopt;
  Perm pi(n);
  if (B.order() != factorial(n)) {
    auto c = conjugating_permutation(ca.image, B);
    if (!c)
      return std::nullopt;
    pi = *c;
  }
  std::vector<Perm> ims;
  for (auto const &g : X.generators())
    ims.push_back(pi.conj(ca.map.eval(g)));
  return GroupMorphism(X, B, ims, true);
}

}  // namespace

GroupMorphism surjection_onto(const PermGroup &X, const PermGroup &B)
{
  if (B.is_trivial())
    return GroupMorphism(X, B, std::vector<Perm>(X.generators().size(), Perm(B.degree())),
                         false);
  if (X.degree() == B.degree() && same_group(X, B))
    return GroupMorphism(X, B, X.generators(), false);
  if (!is_transitive(B))
    throw ArgumentError("edge group must be transitive");
  if (X.order() % B.order() != 0)
    throw ArgumentError("no surjection: |B| does not divide the domain order");

  std::vector<std::function<PermGroup()>> cands = {
      [&] { return derived_subgroup(X); }, [&] { return soluble_residual(X); },
      [&] { return soluble_radical(X); }, [&] { return socle(X); }};
  for (auto p : prime_factors(X.order()))
    cands.push_back([&X, p] { return sylow_subgroup(X, p); });
  for (auto p : prime_factors(X.order()))
    cands.push_back([&X, p] { return join(socle(X), sylow_subgroup(X, p)); });
  for (auto p : prime_factors(X.order()))
    cands.push_back([&X, p] { return join(derived_subgroup(X), sylow_subgroup(X, p)); });
  for (auto const &orb : orbits(X))
    cands.push_back([&X, x = orb[0]] { return stabilizer(X, {x}); });
  for (auto const &c : cands)
    if (auto m = try_subgroup(X, c(), B))
      return *m;

  if (X.order() <= 2000) {
    std::uint64_t target = X.order() / B.degree();
    auto elems = X.elements();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (target % elems[i].order() != 0)
        continue;
      for (std::size_t j = i; j < elems.size(); ++j) {
        if (target % elems[j].order() != 0)
          continue;
        PermGroup Y(X.degree(), {elems[i], elems[j]});
        if (Y.order() != target)
          continue;
        if (auto m = try_subgroup(X, Y, B))
          return *m;
      }
    }
  }
  throw ArgumentError("no surjection onto the edge group was found");
}

SystemConfig parse_system_config(std::istream &in, const std::string &name)
{
  SystemConfig cfg;
  cfg.name = name;
  std::string section, line;
  std::size_t lineno = 0;
  bool seen_edge = false;
  std::array<bool, 2> seen_local{false, false};
  auto fail = [&](const std::string &msg) {
    throw ArgumentError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::vector<std::string> known = {
          "local_action_0", "local_action_1", "edge_group", "psi_0", "psi_1", "system"};
      if (std::find(known.begin(), known.end(), section) == known.end())
        fail("unknown section [" + section + "]");
      if (section == "edge_group")
        seen_edge = true;
      if (section.rfind("local_action_", 0) == 0)
        seen_local[section.back() - '0'] = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (section.empty())
      fail("key outside any section");
    int t = section.back() - '0';
    try {
      if (section == "system" && key == "name") {
        cfg.name = val;
      } else if (section.rfind("local_action_", 0) == 0 && key == "group") {
        cfg.group[t] = val;
      } else if (section.rfind("local_action_", 0) == 0 && key == "base") {
        cfg.base[t] = static_cast<Point>(std::stoul(val));
      } else if (section == "edge_group" && key == "degree") {
        cfg.edge_degree = std::stoul(val);
      } else if (section == "edge_group" && key == "generators") {
        cfg.edge_generators = val;
      } else if (section.rfind("psi_", 0) == 0 && key == "preset") {
        cfg.preset[t] = val;
      } else if (section.rfind("psi_", 0) == 0 && key == "map") {
        auto arrow = val.find("->");
        if (arrow == std::string::npos)
          fail("map lines need 'generator -> image'");
        cfg.map[t].emplace_back(trim(val.substr(0, arrow)), trim(val.substr(arrow + 2)));
      } else {
        fail("unknown key '" + key + "' in [" + section + "]");
      }
    } catch (const std::invalid_argument &) {
      fail("expected a number for '" + key + "'");
    } catch (const std::out_of_range &) {
      fail("number out of range for '" + key + "'");
    }
  }
  if (!seen_edge || !seen_local[0] || !seen_local[1])
    throw ArgumentError(name + ": missing [local_action_0], [local_action_1] or [edge_group]");
  for (int t = 0; t < 2; ++t) {
    if (cfg.group[t].empty())
      throw ArgumentError(name + ": [local_action_" + std::to_string(t) + "] needs a group");
    if (cfg.preset[t].empty() == cfg.map[t].empty())
      throw ArgumentError(name + ": [psi_" + std::to_string(t) +
                          "] needs exactly one of a preset or map lines");
  }
  return cfg;
}

SystemConfig load_system_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw ArgumentError("cannot open " + path);
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parse_system_config(in, stem);
}

EdgeSystem build_system(const SystemConfig &cfg)
{
  if (cfg.edge_degree == 0)
    throw ArgumentError("edge group degree must be positive");
  std::vector<Perm> bgens = cfg.edge_generators.empty()
                                ? std::vector<Perm>{Perm(cfg.edge_degree)}
                                : parse_perm_list(cfg.edge_generators, cfg.edge_degree);
  PermGroup B(cfg.edge_degree, bgens);
  std::array<PermGroup, 2> F;
  std::array<GroupMorphism, 2> psi;
  for (int t = 0; t < 2; ++t) {
    CatalogEntry e = catalog(cfg.group[t]);
    F[t] = e.group;
    if (cfg.base[t] >= F[t].degree())
      throw ArgumentError("base point outside the domain of " + cfg.group[t]);
    PermGroup Fw = stabilizer(F[t], {cfg.base[t]});
    if (cfg.preset[t] == "residual_projective") {
      if (e.family != "psl" && e.family != "pgl" && e.family != "pgammal")
        throw ArgumentError("residual_projective needs a projective local action");
      Flavor fl = e.family == "psl" ? Flavor::psl
                  : e.family == "pgl" ? Flavor::pgl
                                      : Flavor::pgammal;
      GroupMorphism r = residual_projective_action(e.dim, e.q, fl, cfg.base[t]);
      psi[t] = r.then(surjection_onto(r.codomain(), B));
    } else if (cfg.preset[t] == "quotient") {
      psi[t] = surjection_onto(Fw, B);
    } else if (!cfg.preset[t].empty()) {
      throw ArgumentError("unknown psi preset '" + cfg.preset[t] + "'");
    } else {
      std::vector<Perm> src, dst;
      for (auto const &[a, b] : cfg.map[t]) {
        src.push_back(Perm::parse(a, F[t].degree()));
        dst.push_back(Perm::parse(b, cfg.edge_degree));
      }
      PermGroup D(F[t].degree(), src);
      if (!same_group(D, Fw))
        throw ArgumentError("psi_" + std::to_string(t) +
                            " map sources must generate the base point stabilizer");
      psi[t] = GroupMorphism(D, B, dst, true);
      if (!psi[t].is_surjective())
        throw ArgumentError("psi_" + std::to_string(t) + " is not surjective");
    }
  }
  return edge_system(F[0], cfg.base[0], psi[0], F[1], cfg.base[1], psi[1], cfg.name);
}

EdgeSystem load_system(const std::string &path)
{
  return build_system(load_system_config(path));
}

std::string bundled_system(const std::string &stem)
{
  return std::string(GTREE_DATA_DIR) + "/systems/" + stem + ".system";
}

std::vector<std::string> bundled_system_names()
{
  return {"exceptional", "fano", "m11", "pgammal33", "trivialB", "trivialB_large",
          "adversarial"};
}

EdgeSystem random_edge_system(std::uint64_t seed)
{
  static const std::vector<std::string> pool = {
      "sym:3", "sym:4", "sym:5", "alt:4", "alt:5", "pgammal:3:2", "psl:2:5", "affine:5:1:mult"};
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::array<PermGroup, 2> F;
  std::array<Point, 2> base;
  for (int t = 0; t < 2; ++t) {
    PermGroup G = catalog(pool[pick(pool.size())]).group;
    std::vector<Point> im(G.degree());
    for (Point i = 0; i < im.size(); ++i)
      im[i] = i;
    std::shuffle(im.begin(), im.end(), rng);
    Perm pi(im);
    F[t] = conjugate(G, pi);
    base[t] = pi[0];
  }
  // Sym(3), then Sym(2), then the trivial group, starting at a seeded choice.
  std::vector<PermGroup> edge = {PermGroup(3, parse_perm_list("(0 1 2), (0 1)", 3)),
                                 PermGroup(2, parse_perm_list("(0 1)", 2)),
                                 PermGroup::trivial(1)};
  for (std::size_t e = pick(edge.size()); e < edge.size(); ++e) {
    try {
      std::array<GroupMorphism, 2> psi;
      for (int t = 0; t < 2; ++t)
        psi[t] = surjection_onto(stabilizer(F[t], {base[t]}), edge[e]);
      return edge_system(F[0], base[0], psi[0], F[1], base[1], psi[1],
                         "random:" + std::to_string(seed));
    } catch (const ArgumentError &) {
    }
  }
  throw InvariantError("trivial edge group always yields a system");
}

}  // namespace gtree
