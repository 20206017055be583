#include <algorithm>
#include <map>
#include <tuple>

#include "gtree/error.hpp"
#include "gtree/structure.hpp"
#include "gtree/treelocal.hpp"

namespace gtree {

namespace {

std::size_t chain_length_bound(std::uint64_t n)
{
  std::size_t len = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++len;
    }
  return n > 1 ? len + 1 : len;
}

// Messages along a path are subgroups of B. step() maps the message M coming
// from the neighbour labelled p to the message sent to the neighbour labelled
// m by a vertex of type s:  psi_m(F_s(m, p) cap psi_p^-1(M)).
class PathDP {
 public:
  explicit PathDP(const EdgeSystem &sys) : sys_(sys), memo_ok_(sys.B.order() <= 5040) {}

  PermGroup endpoint(bool full) const
  {
    return full ? sys_.B : PermGroup::trivial(sys_.B.degree());
  }

  PermGroup step(int s, Point m, Point p, const PermGroup &M)
  {
    std::vector<Perm> key;
    if (memo_ok_) {
      key = M.elements();
      std::sort(key.begin(), key.end());
      auto it = memo_.find({s & 1, m, p, key});
      if (it != memo_.end())
        return it->second;
    }
    auto const &E = sys_.at(s);
    PermGroup H = stabilizer(E.preimage_at(p, M), {m});
    PermGroup out = E.image_at(m, H);
    if (memo_ok_)
      memo_.emplace(std::make_tuple(s & 1, m, p, std::move(key)), out);
    return out;
  }

 private:
  const EdgeSystem &sys_;
  bool memo_ok_;
  std::map<std::tuple<int, Point, Point, std::vector<Perm>>, PermGroup> memo_;
};

bool same_subgroup(const PermGroup &a, const PermGroup &b)
{
  return a.order() == b.order() && is_subgroup(a, b);
}

std::size_t orbit_count_off(const PermGroup &G, Point omega)
{
  std::vector<Point> pts;
  for (Point x = 0; x < G.degree(); ++x)
    if (x != omega)
      pts.push_back(x);
  return orbits_on(G, pts).size();
}

Point canonical_label(const EdgeSystem &sys, int t, std::size_t j)
{
  int alphabet = (t + static_cast<int>(j) + 1) & 1;
  return (j / 2) % 2 == 0 ? sys.base[alphabet] : sys.alt[alphabet];
}

struct Messages {
  std::vector<PermGroup> X;  // X[k-1] is the message reaching the root
  std::size_t rounds = 0;
};

// Tail iteration W^(a)_{n+1} = S_a(W^(a+1)_n) over the four step residues,
// until every residue is fixed; X_k = W^(1)_{k-1}.
Messages iterate_messages(const EdgeSystem &sys, PathDP &dp, int t, bool full,
                          std::size_t cap)
{
  std::array<int, 4> type;
  std::array<Point, 4> m, p;
  for (std::size_t a = 0; a < 4; ++a) {
    std::size_t j = a == 0 ? 4 : a;
    type[a] = (t + static_cast<int>(j)) & 1;
    m[a] = canonical_label(sys, t, j - 1);
    p[a] = canonical_label(sys, t, j + 1);
  }
  std::array<PermGroup, 4> W;
  W.fill(dp.endpoint(full));
  Messages out;
  out.X.push_back(W[1]);
  for (std::size_t n = 0;; ++n) {
    if (n > cap)
      throw InvariantError("path messages did not stabilize within the chain bound");
    std::array<PermGroup, 4> next;
    bool fixed = true;
    for (std::size_t a = 0; a < 4; ++a) {
      next[a] = dp.step(type[a], m[a], p[a], W[(a + 1) % 4]);
      if (!same_subgroup(next[a], W[a]))
        fixed = false;
    }
    if (fixed) {
      out.rounds = n;
      return out;
    }
    W = next;
    out.X.push_back(W[1]);
  }
}

}  // namespace

std::vector<Point> canonical_path_labels(const EdgeSystem &sys, int t, std::size_t k)
{
  std::vector<Point> labels;
  for (std::size_t j = 0; j <= k; ++j)
    labels.push_back(canonical_label(sys, t, j));
  return labels;
}

PathValues path_local_actions(const EdgeSystem &sys, int t, const std::vector<Point> &labels)
{
  if (labels.size() < 2)
    throw ArgumentError("a path needs at least one edge");
  std::size_t k = labels.size() - 1;
  for (std::size_t j = 0; j <= k; ++j)
    if (labels[j] >= sys.degree(t + static_cast<int>(j) + 1))
      throw ArgumentError("path label outside its alphabet");
  for (std::size_t j = 1; j < k; ++j)
    if (labels[j - 1] == labels[j + 1])
      throw ArgumentError("path labels must not repeat at distance 2");
  PathDP dp(sys);
  PermGroup ML = dp.endpoint(true), MD = dp.endpoint(false);
  for (std::size_t j = k - 1; j >= 1; --j) {
    int s = t + static_cast<int>(j);
    ML = dp.step(s, labels[j - 1], labels[j + 1], ML);
    MD = dp.step(s, labels[j - 1], labels[j + 1], MD);
  }
  auto const &E = sys.at(t);
  return {E.preimage_at(labels[1], ML), E.preimage_at(labels[1], MD)};
}

LocalActionSeries lambda_series(const EdgeSystem &sys, int t, std::size_t kmax)
{
  LocalActionSeries s;
  s.type = t & 1;
  s.round_cap = 4 * chain_length_bound(sys.B.order()) + 4;
  PathDP dp(sys);
  Messages L = iterate_messages(sys, dp, t, true, s.round_cap);
  Messages D = iterate_messages(sys, dp, t, false, s.round_cap);
  s.fixpoint_rounds = L.rounds;
  s.fixpoint_rounds_delta = D.rounds;
  std::size_t K = std::max({kmax, L.X.size() + 1, D.X.size() + 1, std::size_t(2)});
  auto message = [](const Messages &M, std::size_t k) -> const PermGroup & {
    return M.X[std::min(k, M.X.size()) - 1];
  };
  s.stable_k = std::min(K, L.X.size());
  while (s.stable_k > 1 && same_subgroup(message(L, s.stable_k - 1), message(L, K)))
    --s.stable_k;
  s.stable_k_delta = std::min(K, D.X.size());
  while (s.stable_k_delta > 1 && same_subgroup(message(D, s.stable_k_delta - 1), message(D, K)))
    --s.stable_k_delta;

  auto const &E = sys.at(t);
  Point w = sys.base[s.type];
  for (std::size_t k = 1; k <= K; ++k) {
    s.lambda.push_back(E.preimage_at(w, message(L, k)));
    s.delta.push_back(E.preimage_at(w, message(D, k)));
    s.delta_orbits.push_back(orbit_count_off(s.delta.back(), w));
    s.quotient_orders.push_back(s.lambda.back().order() / s.delta.back().order());
    if (!s.first_intransitive && !transitive_off(s.lambda.back(), w))
      s.first_intransitive = k;
  }
  return s;
}

GoursatReport goursat_report(const EdgeSystem &sys, const LocalActionSeries &series,
                             std::size_t k)
{
  if (k < 1 || k + 1 > series.size())
    throw ArgumentError("series too short for the requested length");
  int t = series.type;
  int far_type = (t + static_cast<int>(k)) & 1;
  std::vector<Point> labels = canonical_path_labels(sys, t, k + 1);
  std::vector<Point> rev(labels.rbegin() + 1, labels.rend());
  PathValues far = path_local_actions(sys, far_type, rev);

  GoursatReport g;
  g.type = t;
  g.k = k;
  g.near_quotient = series.quotient_orders[k - 1];
  g.far_quotient = far.lambda.order() / far.delta.order();
  if (g.near_quotient != g.far_quotient)
    throw InvariantError("path stabilizer quotients differ at the two ends");

  g.index = series.lambda[k - 1].order() / series.lambda[k].order();
  Point back = labels[k - 1], next = labels[k + 1];
  g.far_delta_orbits = orbit_count_off(far.delta, back);
  g.far_transitive = transitive_off(far.lambda, back);
  g.line_identity = g.index == g.far_delta_orbits;
  g.divides = (sys.degree(far_type) - 1) % g.index == 0;
  std::uint64_t orbit_ratio = orbit(far.lambda, next).size() / orbit(far.delta, next).size();
  if (g.index != orbit_ratio)
    throw InvariantError("line index differs from the far-end orbit ratio");
  if (g.far_transitive && (!g.line_identity || !g.divides))
    throw InvariantError("line index identity failed");
  return g;
}

Membership membership_HT(const EdgeSystem &sys, const std::array<LocalActionSeries, 2> &series)
{
  Membership m;
  for (int t = 0; t < 2; ++t) {
    auto const &s = series[t];
    m.checked_to[t] = s.size();
    if (s.first_intransitive) {
      std::pair<std::size_t, int> w{*s.first_intransitive, t};
      if (!m.witness || w < *m.witness)
        m.witness = w;
    }
  }
  m.in_HT = !m.witness;
  (void)sys;
  return m;
}

Membership membership_HT(const EdgeSystem &sys)
{
  return membership_HT(sys, {lambda_series(sys, 0), lambda_series(sys, 1)});
}

bool conjugate_in_local_action(const EdgeSystem &sys, int t, const PermGroup &canonical,
                               const PermGroup &other, Point other_base)
{
  if (canonical.order() != other.order())
    return false;
  auto const &E = sys.at(t);
  PermGroup O = conjugate(other, E.transversal(other_base).inverse());
  auto contained = [&](const Perm &h) {
    for (auto const &g : O.generators())
      if (!canonical.contains(h.conj(g)))
        return false;
    return true;
  };
  if (contained(Perm(E.points())))
    return true;
  for (auto const &h : E.stabilizer_at(sys.base[t & 1]).elements())
    if (contained(h))
      return true;
  return false;
}

}  // namespace gtree
