#include "gtree/group.hpp"

#include <algorithm>
#include <mutex>

#include "gtree/error.hpp"

namespace gtree {

struct PermGroup::Lazy {
  std::once_flag once;
  std::unique_ptr<StabChain> chain;
};

PermGroup::PermGroup() : degree_(1), lazy_(std::make_shared<Lazy>()) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens,
                     std::optional<std::uint64_t> order_bound)
  : degree_(degree), order_bound_(order_bound), lazy_(std::make_shared<Lazy>())
{
  if (degree == 0)
    throw ArgumentError("group degree must be positive");
  for (auto &g : gens) {
    if (g.degree() != degree)
      throw ArgumentError("generator degree " + std::to_string(g.degree()) +
                          " does not match group degree " + std::to_string(degree));
    if (!g.is_identity())
      gens_.push_back(std::move(g));
  }
}

PermGroup PermGroup::trivial(std::size_t degree)
{
  return PermGroup(degree, {}, 1);
}

const StabChain &PermGroup::chain() const
{
  std::call_once(lazy_->once, [this] {
    ChainOptions opt;
    opt.order_bound = order_bound_;
    lazy_->chain = std::make_unique<StabChain>(degree_, gens_, opt);
  });
  return *lazy_->chain;
}

bool PermGroup::contains(const Perm &p) const
{
  if (p.degree() != degree_)
    throw ArgumentError("degree mismatch in membership test");
  return chain().contains(p);
}

StabChain PermGroup::chain_with_prefix(const std::vector<Point> &prefix) const
{
  ChainOptions opt;
  opt.prefix = prefix;
  opt.order_bound = order();
  return StabChain(degree_, gens_, opt);
}

void PermGroup::for_each_element(const std::function<void(const Perm &)> &f,
                                 std::uint64_t limit) const
{
  auto const &C = chain();
  if (C.order() > limit)
    throw BudgetError("element enumeration of a group of order " +
                      std::to_string(C.order()) + " exceeds limit");
  auto const &levels = C.levels();
  // Every element is inv_trans_k * ... * inv_trans_0 for a unique choice.
  std::function<void(std::size_t, const Perm &)> rec = [&](std::size_t k, const Perm &acc) {
    if (k == levels.size()) {
      f(acc);
      return;
    }
    for (auto const &t : levels[k].inv_trans)
      rec(k + 1, t * acc);
  };
  rec(0, Perm(degree_));
}

std::vector<Perm> PermGroup::elements(std::uint64_t limit) const
{
  std::vector<Perm> out;
  for_each_element([&](const Perm &p) { out.push_back(p); }, limit);
  return out;
}

Perm PermGroup::random_element(std::mt19937_64 &rng) const
{
  Perm g(degree_);
  for (auto const &L : chain().levels()) {
    std::uniform_int_distribution<std::size_t> d(0, L.inv_trans.size() - 1);
    g = L.inv_trans[d(rng)] * g;
  }
  return g;
}

std::vector<Point> orbit(const PermGroup &G, Point x)
{
  if (x >= G.degree())
    throw ArgumentError("point out of range");
  std::vector<bool> seen(G.degree(), false);
  std::vector<Point> orb{x};
  seen[x] = true;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (auto const &g : G.generators()) {
      Point y = g[orb[i]];
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<Point>> orbits_on(const PermGroup &G,
                                          const std::vector<Point> &points)
{
  std::vector<bool> seen(G.degree(), false);
  std::vector<std::vector<Point>> out;
  for (Point x : points) {
    if (seen[x])
      continue;
    auto o = orbit(G, x);
    for (Point y : o)
      seen[y] = true;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::vector<Point>> orbits(const PermGroup &G)
{
  std::vector<Point> all(G.degree());
  for (Point x = 0; x < all.size(); ++x)
    all[x] = x;
  return orbits_on(G, all);
}

bool is_transitive(const PermGroup &G)
{
  return orbit(G, 0).size() == G.degree();
}

PermGroup stabilizer(const PermGroup &G, const std::vector<Point> &points)
{
  for (Point p : points)
    if (p >= G.degree())
      throw ArgumentError("point out of range");
  if (points.empty())
    return G;
  StabChain C = G.chain_with_prefix(points);
  std::size_t k = C.prefix_levels();
  return PermGroup(G.degree(), C.stabilizer_gens(k), C.stabilizer_order(k));
}

std::size_t transitivity_degree(const PermGroup &G)
{
  std::size_t n = G.degree();
  std::vector<Point> fixed;
  PermGroup H = G;
  std::size_t k = 0;
  while (k < n) {
    std::vector<Point> rest;
    for (Point x = 0; x < n; ++x)
      if (std::find(fixed.begin(), fixed.end(), x) == fixed.end())
        rest.push_back(x);
    if (orbit(H, rest.front()).size() != rest.size())
      break;
    ++k;
    fixed.push_back(rest.front());
    H = stabilizer(H, {rest.front()});
  }
  return k;
}

bool is_subgroup(const PermGroup &H, const PermGroup &G)
{
  if (H.degree() != G.degree())
    return false;
  for (auto const &h : H.generators())
    if (!G.contains(h))
      return false;
  return true;
}

bool same_group(const PermGroup &H, const PermGroup &G)
{
  return H.degree() == G.degree() && H.order() == G.order() && is_subgroup(H, G);
}

bool normalizes(const Perm &g, const PermGroup &N)
{
  for (auto const &n : N.generators())
    if (!N.contains(g.conj(n)))
      return false;
  return true;
}

bool is_normal(const PermGroup &N, const PermGroup &G)
{
  if (!is_subgroup(N, G))
    return false;
  for (auto const &g : G.generators())
    if (!normalizes(g, N))
      return false;
  return true;
}

PermGroup with_generators(const PermGroup &G, const std::vector<Perm> &extra)
{
  std::vector<Perm> gens = G.generators();
  for (auto const &e : extra)
    gens.push_back(e);
  return PermGroup(G.degree(), gens);
}

PermGroup join(const PermGroup &H, const PermGroup &K)
{
  if (H.degree() != K.degree())
    throw ArgumentError("degree mismatch in join");
  if (is_subgroup(K, H))
    return H;
  if (is_subgroup(H, K))
    return K;
  return with_generators(H, K.generators());
}

PermGroup conjugate(const PermGroup &G, const Perm &pi)
{
  std::vector<Perm> gens;
  for (auto const &g : G.generators())
    gens.push_back(pi.conj(g));
  return PermGroup(G.degree(), gens, G.order());
}

PermGroup generated_subgroup(std::size_t degree, const std::vector<Perm> &elements)
{
  PermGroup S = PermGroup::trivial(degree);
  for (auto const &x : elements)
    if (!S.contains(x))
      S = with_generators(S, {x});
  return S;
}

}  // namespace gtree
