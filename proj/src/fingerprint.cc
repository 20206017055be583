#include "gtree/fingerprint.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gtree {

Fingerprint abstract_fingerprint(const PermGroup &G)
{
  Fingerprint f;
  f.order = G.order();
  for (auto const &D : derived_series(G))
    f.derived_orders.push_back(D.order());
  f.residual_order = f.derived_orders.back();
  f.radical_order = soluble_radical(G).order();
  f.kappa = kappa_class(G);
  f.abelian_invariants = abelian_invariants(G);
  return f;
}

Fingerprint fingerprint(const PermGroup &G)
{
  Fingerprint f = abstract_fingerprint(G);
  std::vector<std::size_t> lens;
  for (auto const &o : orbits(G))
    lens.push_back(o.size());
  std::sort(lens.begin(), lens.end());
  f.orbit_lengths = lens;
  f.transitivity_degree = lens.size() == 1 ? transitivity_degree(G) : 0;
  return f;
}

std::string to_string(Verdict v)
{
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::conjugate: return "conjugate";
    default: return "mismatch";
  }
}

Verdict same_structure(const PermGroup &G, const Fingerprint &target)
{
  if (G.order() != target.order)
    return Verdict::mismatch;
  Fingerprint f = (target.orbit_lengths || target.transitivity_degree)
                      ? fingerprint(G)
                      : abstract_fingerprint(G);
  if (!target.orbit_lengths)
    f.orbit_lengths.reset();
  if (!target.transitivity_degree)
    f.transitivity_degree.reset();
  return f == target ? Verdict::match : Verdict::mismatch;
}

Verdict same_structure(const PermGroup &G, const PermGroup &H)
{
  if (G.order() != H.order())
    return Verdict::mismatch;
  if (G.degree() == H.degree() && conjugating_permutation(G, H))
    return Verdict::conjugate;
  return same_structure(G, fingerprint(H));
}

namespace {

std::vector<std::size_t> cycle_type(const Perm &p)
{
  std::vector<std::size_t> t;
  for (auto const &c : p.cycles())
    t.push_back(c.size());
  std::sort(t.begin(), t.end());
  return t;
}

// Extends pi on the G-orbit of x with pi(x) = y so that pi g_i = h_i pi.
bool extend_on_orbit(const std::vector<Perm> &gs, const std::vector<Perm> &hs,
                     Point x, Point y, std::vector<std::int64_t> &pi,
                     std::vector<bool> &used)
{
  std::vector<Point> todo{x};
  std::vector<Point> assigned;
  auto fail = [&] {
    for (Point z : assigned) {
      used[static_cast<std::size_t>(pi[z])] = false;
      pi[z] = -1;
    }
    return false;
  };
  if (used[y])
    return false;
  pi[x] = y;
  used[y] = true;
  assigned.push_back(x);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    Point z = todo[i];
    for (std::size_t k = 0; k < gs.size(); ++k) {
      Point gz = gs[k][z];
      Point want = hs[k][static_cast<Point>(pi[z])];
      if (pi[gz] >= 0) {
        if (pi[gz] != want)
          return fail();
        continue;
      }
      if (used[want])
        return fail();
      pi[gz] = want;
      used[want] = true;
      assigned.push_back(gz);
      todo.push_back(gz);
    }
  }
  return true;
}

}  // namespace

std::optional<Perm> conjugating_permutation(const PermGroup &G, const PermGroup &H)
{
  if (G.degree() != H.degree() || G.order() != H.order())
    return std::nullopt;
  if (G.degree() > 32 || G.order() > 500)
    return std::nullopt;
  std::size_t n = G.degree();
  auto gs = small_generating_set(G);
  if (gs.empty())
    return Perm(n);
  if (gs.size() > 2)
    return std::nullopt;
  auto helems = H.elements();
  std::vector<std::vector<Perm>> cands(gs.size());
  for (std::size_t k = 0; k < gs.size(); ++k) {
    auto ct = cycle_type(gs[k]);
    for (auto const &h : helems)
      if (cycle_type(h) == ct)
        cands[k].push_back(h);
  }
  auto orbs = orbits(G);

  std::vector<Perm> hs(gs.size());
  std::optional<Perm> found;
  std::function<void(std::size_t)> choose = [&](std::size_t k) {
    if (found)
      return;
    if (k < gs.size()) {
      for (auto const &h : cands[k]) {
        hs[k] = h;
        choose(k + 1);
        if (found)
          return;
      }
      return;
    }
    std::vector<std::int64_t> pi(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> place = [&](std::size_t oi) {
      if (oi == orbs.size())
        return true;
      Point x = orbs[oi][0];
      for (Point y = 0; y < n; ++y) {
        auto saved = pi;
        auto saved_used = used;
        if (extend_on_orbit(gs, hs, x, y, pi, used) && place(oi + 1))
          return true;
        pi = saved;
        used = saved_used;
      }
      return false;
    };
    if (!place(0))
      return;
    std::vector<Point> im(n);
    for (std::size_t i = 0; i < n; ++i)
      im[i] = static_cast<Point>(pi[i]);
    Perm p(std::move(im));
    if (same_group(conjugate(G, p), H))
      found = p;
  };
  choose(0);
  return found;
}

nlohmann::json to_json(const Fingerprint &f)
{
  nlohmann::json j;
  j["order"] = f.order;
  if (f.orbit_lengths)
    j["orbit_lengths"] = *f.orbit_lengths;
  if (f.transitivity_degree)
    j["transitivity_degree"] = *f.transitivity_degree;
  j["derived_orders"] = f.derived_orders;
  j["radical_order"] = f.radical_order;
  j["residual_order"] = f.residual_order;
  j["kappa"] = to_string(f.kappa);
  j["abelian_invariants"] = f.abelian_invariants;
  return j;
}

std::string summary(const Fingerprint &f)
{
  std::ostringstream os;
  os << "order " << f.order << ", derived";
  for (auto o : f.derived_orders)
    os << ' ' << o;
  os << ", radical " << f.radical_order << ", residual " << f.residual_order
     << ", kappa " << to_string(f.kappa) << ", abelianization [";
  for (std::size_t i = 0; i < f.abelian_invariants.size(); ++i)
    os << (i ? "," : "") << f.abelian_invariants[i];
  os << ']';
  return os.str();
}

}  // namespace gtree
