#include "gtree/chain.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "gtree/error.hpp"

namespace gtree {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
  if (a != 0 && b > UINT64_MAX / a)
    throw BudgetError("group order exceeds 64 bits");
  return a * b;
}

class Builder {
 public:
  Builder(std::size_t n, const std::vector<Perm> &gens, const ChainOptions &opt)
    : n_(n), gens_(), opt_(opt)
  {
    for (auto const &g : gens) {
      if (g.degree() != n)
        throw ArgumentError("generator degree mismatch");
      if (!g.is_identity())
        gens_.push_back(g);
    }
    // Orbit sizes under the input generators drive base point choice.
    orbit_size_.assign(n, 1);
    std::vector<std::int32_t> comp(n, -1);
    for (Point x = 0; x < n; ++x) {
      if (comp[x] >= 0)
        continue;
      std::vector<Point> orb{x};
      comp[x] = static_cast<std::int32_t>(x);
      for (std::size_t i = 0; i < orb.size(); ++i)
        for (auto const &g : gens_) {
          Point y = g[orb[i]];
          if (comp[y] < 0) {
            comp[y] = static_cast<std::int32_t>(x);
            orb.push_back(y);
          }
        }
      for (Point y : orb)
        orbit_size_[y] = static_cast<std::uint32_t>(orb.size());
    }
  }

  std::vector<ChainLevel> run(std::size_t &prefix_levels)
  {
    for (Point p : opt_.prefix) {
      if (p >= n_)
        throw ArgumentError("base point out of range");
      bool dup = std::any_of(levels_.begin(), levels_.end(),
                             [&](auto const &L) { return L.base == p; });
      if (dup || orbit_size_[p] == 1)
        continue;
      ChainLevel L;
      L.base = p;
      levels_.push_back(std::move(L));
      rebuild(levels_.size() - 1);
    }
    prefix_levels = levels_.size();

    for (auto const &g : gens_)
      insert(g, 0);

    if (!gens_.empty())
      random_phase();
    if (!opt_.order_bound || order() != *opt_.order_bound)
      verify();
    if (opt_.order_bound && order() > *opt_.order_bound)
      throw InvariantError("chain order " + std::to_string(order()) +
                           " exceeds the bound " +
                           std::to_string(*opt_.order_bound));
    return std::move(levels_);
  }

 private:
  std::uint64_t order() const
  {
    std::uint64_t o = 1;
    for (auto const &L : levels_)
      o = checked_mul(o, L.orbit.size());
    return o;
  }

  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from) const
  {
    for (std::size_t k = from; k < levels_.size(); ++k) {
      auto const &L = levels_[k];
      std::int32_t i = L.pos[g[L.base]];
      if (i < 0)
        return {std::move(g), k};
      g = L.inv_trans[static_cast<std::size_t>(i)] * g;
    }
    return {std::move(g), levels_.size()};
  }

  Point choose_base(const Perm &h) const
  {
    std::size_t limit = opt_.base_limit ? opt_.base_limit : n_;
    Point best = 0;
    std::uint32_t best_size = 0;
    for (Point x = 0; x < limit; ++x)
      if (h[x] != x && orbit_size_[x] > best_size) {
        best = x;
        best_size = orbit_size_[x];
      }
    if (best_size == 0)
      throw ArgumentError("element acts trivially on the admissible base range");
    return best;
  }

  void rebuild(std::size_t k)
  {
    auto &L = levels_[k];
    L.orbit.assign(1, L.base);
    L.pos.assign(n_, -1);
    L.pos[L.base] = 0;
    L.inv_trans.assign(1, Perm(n_));
    L.parent.assign(1, -1);
    L.parent_gen.assign(1, -1);
    std::vector<Perm> inv;
    inv.reserve(L.gens.size());
    for (auto const &s : L.gens)
      inv.push_back(s.inverse());
    for (std::size_t i = 0; i < L.orbit.size(); ++i) {
      Point x = L.orbit[i];
      for (std::size_t s = 0; s < L.gens.size(); ++s) {
        Point y = L.gens[s][x];
        if (L.pos[y] >= 0)
          continue;
        L.pos[y] = static_cast<std::int32_t>(L.orbit.size());
        L.orbit.push_back(y);
        L.inv_trans.push_back(L.inv_trans[i] * inv[s]);
        L.parent.push_back(static_cast<std::int32_t>(i));
        L.parent_gen.push_back(static_cast<std::int32_t>(s));
      }
    }
  }

  // Adds h, which fixes the base points of levels < from, to levels
  // from..stop where sifting left it. Returns the deepest level touched.
  std::size_t insert(const Perm &g, std::size_t from)
  {
    auto [h, stop] = sift(g, from);
    if (h.is_identity())
      return SIZE_MAX;
    if (stop == levels_.size()) {
      ChainLevel L;
      L.base = choose_base(h);
      levels_.push_back(std::move(L));
    }
    for (std::size_t k = from; k <= stop; ++k) {
      levels_[k].gens.push_back(h);
      rebuild(k);
    }
    return stop;
  }

  void random_phase()
  {
    std::mt19937_64 rng(opt_.seed);
    std::vector<Perm> state;
    std::size_t m = std::max<std::size_t>(10, gens_.size());
    for (std::size_t i = 0; i < m; ++i)
      state.push_back(gens_[i % gens_.size()]);
    Perm acc(n_);
    auto step = [&] {
      std::uniform_int_distribution<std::size_t> pick(0, state.size() - 1);
      std::size_t i = pick(rng), j = pick(rng);
      while (j == i)
        j = pick(rng);
      state[i] = (rng() & 1) ? state[i] * state[j] : state[i] * state[j].inverse();
      acc = acc * state[i];
      return acc;
    };
    for (int i = 0; i < 40; ++i)
      step();
    std::size_t quiet = 0;
    std::size_t quiet_cap = opt_.order_bound ? 60 : 30;
    while (quiet < quiet_cap) {
      if (opt_.order_bound && order() == *opt_.order_bound)
        return;
      if (insert(step(), 0) == SIZE_MAX)
        ++quiet;
      else
        quiet = 0;
    }
  }

  void verify()
  {
    std::size_t i = levels_.size();
    while (i-- > 0) {
      bool restart = false;
      for (std::size_t idx = 0; idx < levels_[i].orbit.size() && !restart; ++idx) {
        for (std::size_t s = 0; s < levels_[i].gens.size(); ++s) {
          auto const &L = levels_[i];
          Point d = L.gens[s][L.orbit[idx]];
          auto di = static_cast<std::size_t>(L.pos[d]);
          if (L.parent[di] == static_cast<std::int32_t>(idx) &&
              L.parent_gen[di] == static_cast<std::int32_t>(s))
            continue;
          Perm sg = L.inv_trans[di] * L.gens[s] * L.inv_trans[idx].inverse();
          std::size_t deep = insert(sg, i + 1);
          if (deep != SIZE_MAX) {
            i = std::min(deep, levels_.size() - 1) + 1;
            restart = true;
            break;
          }
        }
      }
    }
  }

  std::size_t n_;
  std::vector<Perm> gens_;
  const ChainOptions &opt_;
  std::vector<std::uint32_t> orbit_size_;
  std::vector<ChainLevel> levels_;
};

}  // namespace

StabChain::StabChain(std::size_t degree, const std::vector<Perm> &gens,
                     const ChainOptions &opt)
  : degree_(degree)
{
  Builder b(degree, gens, opt);
  levels_ = b.run(prefix_levels_);
}

std::uint64_t StabChain::order() const
{
  return stabilizer_order(0);
}

std::vector<Point> StabChain::base() const
{
  std::vector<Point> b;
  for (auto const &L : levels_)
    b.push_back(L.base);
  return b;
}

std::pair<Perm, std::size_t> StabChain::sift(Perm g, std::size_t from) const
{
  if (g.degree() != degree_)
    throw ArgumentError("degree mismatch in membership test");
  for (std::size_t k = from; k < levels_.size(); ++k) {
    auto const &L = levels_[k];
    std::int32_t i = L.pos[g[L.base]];
    if (i < 0)
      return {std::move(g), k};
    g = L.inv_trans[static_cast<std::size_t>(i)] * g;
  }
  return {std::move(g), levels_.size()};
}

bool StabChain::contains(const Perm &g) const
{
  return sift(g).first.is_identity();
}

std::vector<Perm> StabChain::stabilizer_gens(std::size_t level) const
{
  if (level >= levels_.size())
    return {};
  return levels_[level].gens;
}

std::uint64_t StabChain::stabilizer_order(std::size_t level) const
{
  std::uint64_t o = 1;
  for (std::size_t k = level; k < levels_.size(); ++k)
    o = checked_mul(o, levels_[k].orbit.size());
  return o;
}

}  // namespace gtree
