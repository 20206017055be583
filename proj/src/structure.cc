#include "gtree/structure.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "gtree/error.hpp"
#include "gtree/morphism.hpp"

namespace gtree {

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  if (n > 1)
    ps.push_back(n);
  return ps;
}

std::vector<Perm> small_generating_set(const PermGroup &G, std::uint64_t seed)
{
  if (G.generators().size() <= 3)
    return G.generators();
  std::mt19937_64 rng(seed);
  for (std::size_t k = 2; k <= 3; ++k)
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::vector<Perm> xs;
      for (std::size_t i = 0; i < k; ++i)
        xs.push_back(G.random_element(rng));
      PermGroup H(G.degree(), xs, G.order());
      if (H.order() == G.order())
        return xs;
    }
  std::vector<Perm> kept;
  PermGroup S = PermGroup::trivial(G.degree());
  for (auto const &g : G.generators())
    if (!S.contains(g)) {
      kept.push_back(g);
      S = PermGroup(G.degree(), kept, G.order());
      if (S.order() == G.order())
        break;
    }
  return kept;
}

PermGroup normal_closure(const PermGroup &G, const std::vector<Perm> &elements)
{
  std::vector<Perm> list;
  for (auto const &x : elements) {
    if (!G.contains(x))
      throw ArgumentError("normal closure of an element outside the group");
    if (!x.is_identity())
      list.push_back(x);
  }
  PermGroup N(G.degree(), list, G.order());
  if (list.empty() || N.order() == G.order())
    return N;
  auto conj = small_generating_set(G);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (auto const &g : conj) {
      Perm c = g.conj(list[i]);
      if (!N.contains(c)) {
        list.push_back(c);
        N = PermGroup(G.degree(), list, G.order());
      }
    }
  }
  return N;
}

PermGroup derived_subgroup(const PermGroup &G)
{
  auto gens = small_generating_set(G);
  std::vector<Perm> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Perm c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity())
        comms.push_back(c);
    }
  if (comms.empty())
    return PermGroup::trivial(G.degree());
  return normal_closure(G, comms);
}

std::vector<PermGroup> derived_series(const PermGroup &G)
{
  std::vector<PermGroup> s{G};
  for (;;) {
    PermGroup D = derived_subgroup(s.back());
    if (D.order() == s.back().order())
      break;
    s.push_back(D);
    if (D.order() == 1)
      break;
  }
  return s;
}

PermGroup soluble_residual(const PermGroup &G)
{
  return derived_series(G).back();
}

bool is_soluble(const PermGroup &G)
{
  return soluble_residual(G).order() == 1;
}

bool is_perfect(const PermGroup &G)
{
  return derived_subgroup(G).order() == G.order();
}

ConjugacyClasses conjugacy_classes(const PermGroup &G, std::uint64_t exact_limit)
{
  ConjugacyClasses cc;
  if (G.order() > exact_limit) {
    cc.exhaustive = false;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 256; ++i)
      cc.reps.push_back(G.random_element(rng));
    cc.sizes.assign(cc.reps.size(), 0);
    return cc;
  }
  auto conj = small_generating_set(G);
  std::unordered_set<Perm, PermHash> seen;
  G.for_each_element([&](const Perm &g) {
    if (seen.count(g))
      return;
    std::vector<Perm> cls{g};
    seen.insert(g);
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (auto const &s : conj) {
        Perm c = s.conj(cls[i]);
        if (seen.insert(c).second)
          cls.push_back(std::move(c));
      }
    cc.reps.push_back(g);
    cc.sizes.push_back(cls.size());
  });
  return cc;
}

namespace {

ConjugacyClasses exact_classes(const PermGroup &G)
{
  auto cc = conjugacy_classes(G);
  if (!cc.exhaustive)
    throw BudgetError("conjugacy classes of a group of order " +
                      std::to_string(G.order()) + " are beyond the exact limit");
  return cc;
}

// Some y in the coset-power family of x whose image modulo R has prime order.
std::vector<Perm> prime_order_lifts(const Perm &x, const PermGroup &R)
{
  std::uint64_t m = 1;
  Perm y = x;
  while (!R.contains(y)) {
    y = y * x;
    ++m;
  }
  std::vector<Perm> out;
  if (m == 1)
    return out;
  for (std::uint64_t p : prime_factors(m))
    out.push_back(x.pow(static_cast<long long>(m / p)));
  return out;
}

}  // namespace

PermGroup soluble_radical(const PermGroup &G)
{
  auto cc = exact_classes(G);
  PermGroup R = PermGroup::trivial(G.degree());
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto const &x : cc.reps) {
      for (auto const &y : prime_order_lifts(x, R)) {
        std::vector<Perm> seed = R.generators();
        seed.push_back(y);
        PermGroup N = normal_closure(G, seed);
        if (is_soluble(N)) {
          R = N;
          grew = true;
          break;
        }
      }
      if (grew)
        break;
    }
  }
  return R;
}

std::string to_string(Kappa k)
{
  switch (k) {
    case Kappa::zero: return "0";
    case Kappa::one: return "1";
    default: return "many";
  }
}

Kappa kappa_class(const PermGroup &G)
{
  PermGroup N = soluble_residual(G);
  if (N.order() == 1)
    return Kappa::zero;
  PermGroup R = soluble_radical(N);
  auto cc = exact_classes(N);
  for (auto const &x : cc.reps) {
    if (R.contains(x))
      continue;
    std::vector<Perm> seed = R.generators();
    seed.push_back(x);
    if (normal_closure(N, seed).order() != N.order())
      return Kappa::many;
  }
  return Kappa::one;
}

namespace {

void add_unique(std::vector<PermGroup> &list, const PermGroup &H)
{
  for (auto const &K : list)
    if (same_group(K, H))
      return;
  list.push_back(H);
}

}  // namespace

std::vector<PermGroup> minimal_normal_subgroups(const PermGroup &G)
{
  auto cc = exact_classes(G);
  std::vector<PermGroup> cands;
  for (auto const &x : cc.reps) {
    std::uint64_t o = x.order();
    if (o == 1 || prime_factors(o).size() != 1 || prime_factors(o)[0] != o)
      continue;
    add_unique(cands, normal_closure(G, {x}));
  }
  std::vector<PermGroup> out;
  for (auto const &M : cands) {
    bool minimal = true;
    for (auto const &K : cands)
      if (K.order() < M.order() && is_subgroup(K, M)) {
        minimal = false;
        break;
      }
    if (minimal)
      out.push_back(M);
  }
  return out;
}

PermGroup socle(const PermGroup &G)
{
  std::vector<Perm> gens;
  for (auto const &M : minimal_normal_subgroups(G))
    for (auto const &g : M.generators())
      gens.push_back(g);
  return PermGroup(G.degree(), gens, G.order());
}

std::vector<PermGroup> normal_subgroups(const PermGroup &G)
{
  auto cc = exact_classes(G);
  std::vector<PermGroup> list;
  for (auto const &x : cc.reps)
    add_unique(list, normal_closure(G, {x}));
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      add_unique(list, join(list[i], list[j]));
  std::sort(list.begin(), list.end(),
            [](const PermGroup &a, const PermGroup &b) { return a.order() < b.order(); });
  return list;
}

PermGroup normalizer(const PermGroup &G, const PermGroup &H)
{
  PermGroup S = is_subgroup(H, G) ? H : PermGroup::trivial(G.degree());
  G.for_each_element([&](const Perm &g) {
    if (!S.contains(g) && normalizes(g, H))
      S = with_generators(S, {g});
  });
  return S;
}

PermGroup centralizer(const PermGroup &G, const PermGroup &H)
{
  PermGroup S = PermGroup::trivial(G.degree());
  G.for_each_element([&](const Perm &g) {
    if (S.contains(g))
      return;
    for (auto const &h : H.generators())
      if (g * h != h * g)
        return;
    S = with_generators(S, {g});
  });
  return S;
}

PermGroup sylow_subgroup(const PermGroup &G, std::uint64_t p)
{
  std::uint64_t target = 1, n = G.order();
  while (n % p == 0) {
    n /= p;
    target *= p;
  }
  auto elems = G.elements();
  auto is_p_power = [p](std::uint64_t o) {
    while (o % p == 0)
      o /= p;
    return o == 1;
  };
  PermGroup P = PermGroup::trivial(G.degree());
  while (P.order() < target) {
    bool found = false;
    for (auto const &g : elems) {
      if (g.is_identity() || !is_p_power(g.order()) || P.contains(g) || !normalizes(g, P))
        continue;
      P = with_generators(P, {g});
      found = true;
      break;
    }
    if (!found)
      throw InvariantError("Sylow search stalled");
  }
  return P;
}

std::vector<std::uint64_t> abelian_invariants(const PermGroup &G, std::size_t index_bound)
{
  PermGroup D = derived_subgroup(G);
  std::uint64_t m = G.order() / D.order();
  if (m == 1)
    return {};
  PermGroup A = coset_action(G, D, index_bound).image;
  std::vector<std::uint64_t> orders;
  A.for_each_element([&](const Perm &a) { orders.push_back(a.order()); });
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : prime_factors(m)) {
    // counts[j] = #{a : a^(p^j) = 1}
    std::vector<std::uint64_t> counts{1};
    std::uint64_t pj = 1, ppart = 1, mm = m;
    while (mm % p == 0) {
      mm /= p;
      ppart *= p;
    }
    while (counts.back() < ppart) {
      pj *= p;
      std::uint64_t c = 0;
      for (auto o : orders)
        if (pj % o == 0)
          ++c;
      counts.push_back(c);
    }
    // rank_ge[j] = number of cyclic factors of order at least p^j
    std::vector<std::uint64_t> rank_ge(counts.size() + 1, 0);
    for (std::size_t j = 1; j < counts.size(); ++j) {
      std::uint64_t ratio = counts[j] / counts[j - 1], r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      rank_ge[j] = r;
    }
    std::uint64_t pw = 1;
    for (std::size_t j = 1; j < counts.size(); ++j) {
      pw *= p;
      for (std::uint64_t c = rank_ge[j + 1]; c < rank_ge[j]; ++c)
        out.push_back(pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gtree
