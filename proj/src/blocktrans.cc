#include "gtree/blocktrans.hpp"

#include <algorithm>
#include <map>

#include "gtree/error.hpp"
#include "gtree/morphism.hpp"
#include "gtree/structure.hpp"

namespace gtree {

BlockSystem BlockSystem::singletons(std::size_t degree)
{
  BlockSystem b;
  b.degree = degree;
  b.count = degree;
  b.size = 1;
  b.block_of.resize(degree);
  for (std::size_t i = 0; i < degree; ++i)
    b.block_of[i] = static_cast<std::uint32_t>(i);
  return b;
}

BlockSystem BlockSystem::from_labels(std::vector<std::uint32_t> labels)
{
  // Renumber by first occurrence.
  std::map<std::uint32_t, std::uint32_t> ids;
  std::vector<std::size_t> sizes;
  for (auto &l : labels) {
    auto [it, fresh] = ids.emplace(l, static_cast<std::uint32_t>(ids.size()));
    if (fresh)
      sizes.push_back(0);
    l = it->second;
    ++sizes[l];
  }
  if (!sizes.empty() && std::any_of(sizes.begin(), sizes.end(),
                                    [&](std::size_t s) { return s != sizes[0]; }))
    throw ArgumentError("blocks have unequal sizes");
  BlockSystem b;
  b.degree = labels.size();
  b.count = sizes.size();
  b.size = sizes.empty() ? 0 : sizes[0];
  b.block_of = std::move(labels);
  return b;
}

std::vector<Point> BlockSystem::members(std::uint32_t block) const
{
  std::vector<Point> out;
  for (std::size_t i = 0; i < degree; ++i)
    if (block_of[i] == block)
      out.push_back(static_cast<Point>(i));
  return out;
}

bool is_invariant(const PermGroup &G, const BlockSystem &blocks)
{
  if (G.degree() != blocks.degree)
    return false;
  // Each generator must induce a well-defined map on block labels.
  for (auto const &g : G.generators()) {
    std::vector<std::int64_t> image(blocks.count, -1);
    for (std::size_t x = 0; x < blocks.degree; ++x) {
      auto b = blocks.block_of[x];
      auto c = static_cast<std::int64_t>(blocks.block_of[g[static_cast<Point>(x)]]);
      if (image[b] < 0)
        image[b] = c;
      else if (image[b] != c)
        return false;
    }
  }
  return true;
}

std::uint64_t distant_tuple_count(const BlockSystem &blocks, std::size_t k)
{
  std::uint64_t n = blocks.degree, s = blocks.size, c = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n < i * s)
      return 0;
    c *= n - i * s;
  }
  return c;
}

namespace {

// Orbit of one distant pair, grown breadth first over a bitset of all pairs.
bool distant_pairs_transitive(const PermGroup &G, const BlockSystem &blocks)
{
  std::size_t n = blocks.degree;
  Point x = 0, y = 0;
  while (blocks.block_of[y] == blocks.block_of[x])
    ++y;
  std::vector<bool> seen(n * n, false);
  std::vector<std::pair<Point, Point>> queue{{x, y}};
  seen[x * n + y] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [a, b] = queue[head];
    for (auto const &g : G.generators()) {
      Point ga = g[a], gb = g[b];
      if (!seen[ga * n + gb]) {
        seen[ga * n + gb] = true;
        queue.emplace_back(ga, gb);
      }
    }
  }
  return queue.size() == distant_tuple_count(blocks, 2);
}

}  // namespace

bool distant_tuples_transitive(const PermGroup &G, const BlockSystem &blocks, std::size_t k)
{
  if (k != 2 && k != 3)
    throw ArgumentError("distant tuple transitivity is implemented for k = 2, 3");
  if (blocks.count < k)
    throw ArgumentError("fewer blocks than the tuple length");
  if (!is_invariant(G, blocks))
    throw ArgumentError("block system is not invariant");
  if (!distant_pairs_transitive(G, blocks))
    return false;
  if (k == 2)
    return true;
  // Transitive on distant triples iff the stabilizer of one distant pair is
  // transitive on the points outside both blocks.
  Point x = 0, y = 0;
  while (blocks.block_of[y] == blocks.block_of[x])
    ++y;
  std::vector<Point> rest;
  for (std::size_t z = 0; z < blocks.degree; ++z)
    if (blocks.block_of[z] != blocks.block_of[x] && blocks.block_of[z] != blocks.block_of[y])
      rest.push_back(static_cast<Point>(z));
  return orbits_on(stabilizer(G, {x, y}), rest).size() == 1;
}

TwoBBTReport two_bbt_from_subgroup(const PermGroup &F, const PermGroup &block_stab,
                                   const PermGroup &point_stab)
{
  if (!is_subgroup(point_stab, block_stab) || !is_subgroup(block_stab, F))
    throw ArgumentError("expected point_stab <= block_stab <= F");
  CosetSpace points(F, point_stab);
  CosetSpace blocks(F, block_stab);
  std::vector<std::uint32_t> labels;
  for (auto const &r : points.representatives())
    labels.push_back(static_cast<std::uint32_t>(blocks.index_of(r)));

  TwoBBTReport rep;
  rep.action = PermGroup(points.size(), points.action());
  rep.system = BlockSystem::from_labels(labels);
  rep.degree = points.size();
  rep.blocks = rep.system.count;
  rep.block_size = rep.system.size;
  rep.k1 = is_transitive(rep.action);
  if (rep.k1 && rep.blocks >= 2)
    rep.k2 = distant_tuples_transitive(rep.action, rep.system, 2);
  if (rep.k2 && rep.blocks >= 3)
    rep.k3 = distant_tuples_transitive(rep.action, rep.system, 3);
  return rep;
}

std::size_t delta_star(const PermGroup &F, Point omega)
{
  auto N = soluble_residual(stabilizer(F, {omega}));
  std::vector<Point> rest;
  for (std::size_t x = 0; x < F.degree(); ++x)
    if (x != omega)
      rest.push_back(static_cast<Point>(x));
  return orbits_on(N, rest).size();
}

std::size_t normal_orbit_count(const PermGroup &F, Point omega, const PermGroup &N,
                               const std::optional<BlockSystem> &blocks)
{
  auto H = stabilizer(F, {omega});
  if (!is_subgroup(N, H) || !is_normal(N, H))
    throw ArgumentError("N is not normal in the point stabilizer");
  if (!blocks) {
    std::vector<Point> rest;
    for (std::size_t x = 0; x < F.degree(); ++x)
      if (x != omega)
        rest.push_back(static_cast<Point>(x));
    return orbits_on(N, rest).size();
  }
  if (!is_invariant(F, *blocks))
    throw ArgumentError("block system is not invariant");
  // Orbits of N on blocks: union-find over block labels.
  std::vector<std::uint32_t> parent(blocks->count);
  for (std::uint32_t i = 0; i < parent.size(); ++i)
    parent[i] = i;
  auto find = [&](std::uint32_t a) {
    while (parent[a] != a)
      a = parent[a] = parent[parent[a]];
    return a;
  };
  for (auto const &g : N.generators())
    for (std::size_t x = 0; x < blocks->degree; ++x)
      parent[find(blocks->block_of[x])] = find(blocks->block_of[g[static_cast<Point>(x)]]);
  auto own = find(blocks->block_of[omega]);
  std::size_t count = 0;
  for (std::uint32_t b = 0; b < blocks->count; ++b)
    if (find(b) == b && b != own)
      ++count;
  return count;
}

PermGroup point_stabilizer_subgroup(const PermGroup &F, const std::string &spec, Point omega)
{
  auto H = stabilizer(F, {omega});
  auto arg = [&](const std::string &prefix) -> std::optional<std::string> {
    if (spec.rfind(prefix, 0) == 0)
      return spec.substr(prefix.size());
    return std::nullopt;
  };
  auto prime = [&](const std::string &s) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(s);
    } catch (const std::exception &) {
      throw ArgumentError("bad prime in '" + spec + "'");
    }
    auto f = prime_factors(p);
    if (f.size() != 1 || f[0] != p)
      throw ArgumentError("bad prime in '" + spec + "'");
    return p;
  };
  if (spec == "stab")
    return H;
  if (spec == "derived")
    return derived_subgroup(H);
  if (spec == "residual")
    return soluble_residual(H);
  if (spec == "radical")
    return soluble_radical(H);
  if (spec == "socle")
    return socle(H);
  if (auto p = arg("sylow:"))
    return sylow_subgroup(H, prime(*p));
  if (auto p = arg("socle-normalizer:")) {
    auto P = sylow_subgroup(soluble_residual(H), prime(*p));
    return join(socle(H), normalizer(H, P));
  }
  if (auto g = arg("gens:")) {
    PermGroup S(F.degree(), parse_perm_list(*g, F.degree()));
    if (!is_subgroup(S, H))
      throw ArgumentError("generators do not lie in the point stabilizer");
    return S;
  }
  throw ArgumentError("unknown point stabilizer spec '" + spec + "'");
}

nlohmann::json to_json(const TwoBBTReport &r)
{
  nlohmann::json j{{"degree", r.degree}, {"blocks", r.blocks}, {"block_size", r.block_size},
                   {"k1", r.k1},         {"k2", r.k2},         {"k3", r.k3}};
  if (r.delta_star)
    j["delta_star"] = *r.delta_star;
  return j;
}

}  // namespace gtree
