#include <map>
#include <tuple>

#include "gtree/blocktrans.hpp"
#include "gtree/error.hpp"
#include "gtree/structure.hpp"
#include "gtree/treelocal.hpp"

namespace gtree {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
  return b != 0 && a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

// Vertices in a subtree of height h hanging below a vertex of type s.
std::uint64_t subtree_size(const TreeParams &tp, int s, std::size_t h)
{
  if (h == 0)
    return 1;
  return sat_add(1, sat_mul(tp.degree(s) - 1, subtree_size(tp, 1 - s, h - 1)));
}

std::vector<Point> all_points(std::size_t n)
{
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i)
    pts[i] = static_cast<Point>(i);
  return pts;
}

// Hull messages. A hull vertex w of type s whose parent has label `back` and
// whose own label is `own` sends psi_back(H) upward, where H fixes every hull
// neighbour of w and is compatible with the messages of its children. Leaves
// fix only their parent.
class HullDP {
 public:
  HullDP(const EdgeSystem &sys, std::uint64_t budget) : sys_(sys), budget_(budget) {}

  void count()
  {
    if (++nodes_ > budget_)
      throw BudgetError("theta hull exceeds the node budget");
  }

  // H at a vertex of type s fixing `fixed`, further constrained by the
  // children listed as (label, message).
  PermGroup constrain(int s, const std::vector<Point> &fixed,
                      const std::vector<std::pair<Point, PermGroup>> &children) const
  {
    auto const &E = sys_.at(s);
    PermGroup H = stabilizer(E.group(), fixed);
    for (auto const &[c, M] : children) {
      if (H.is_trivial())
        break;
      H = intersection(H, E.preimage_at(c, M));
    }
    return H;
  }

  PermGroup subtree(int s, Point back, Point own, std::size_t h)
  {
    auto key = std::make_tuple(s, back, own, h);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
    count();
    auto const &E = sys_.at(s);
    PermGroup out;
    if (h == 0) {
      out = E.image_at(back, E.stabilizer_at(back));
    } else {
      // All neighbours lie in the hull; a faithful local action leaves only
      // the identity, and then the children cannot constrain further.
      std::vector<Point> fixed = all_points(E.points());
      PermGroup H = stabilizer(E.group(), fixed);
      if (!H.is_trivial()) {
        std::vector<std::pair<Point, PermGroup>> ch;
        for (Point c : fixed)
          if (c != back)
            ch.emplace_back(c, subtree(1 - s, own, c, h - 1));
        H = constrain(s, fixed, ch);
      }
      out = E.image_at(back, H);
    }
    memo_.emplace(key, out);
    return out;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const EdgeSystem &sys_;
  std::uint64_t budget_, nodes_ = 0;
  std::map<std::tuple<int, Point, Point, std::size_t>, PermGroup> memo_;
};

}  // namespace

PermGroup theta(const EdgeSystem &sys, int t, std::size_t r, std::size_t i,
                std::uint64_t budget, ThetaStats *stats)
{
  if (r < 1)
    throw ArgumentError("theta needs r >= 1");
  t &= 1;
  std::vector<Point> lab = canonical_path_labels(sys, t, r);
  HullDP dp(sys, budget);
  std::uint64_t hull = 1 + r;

  // Walk from v = v_r back to v_1; msg is the message entering v_{j-1}.
  PermGroup msg;
  for (std::size_t j = r; j >= 1; --j) {
    dp.count();
    int s = (t + static_cast<int>(j)) & 1;
    auto const &E = sys.at(s);
    std::size_t side_height = j == r ? r + i - 1 : i + j - 1;
    std::vector<std::pair<Point, PermGroup>> ch;
    if (j < r)
      ch.emplace_back(lab[j + 1], msg);
    std::vector<Point> fixed = all_points(E.points());
    PermGroup H = stabilizer(E.group(), fixed);
    for (Point c : fixed) {
      if (c == lab[j - 1] || (j < r && c == lab[j + 1]))
        continue;
      hull = sat_add(hull, subtree_size(sys.params, 1 - s, side_height));
      if (!H.is_trivial())
        ch.emplace_back(c, dp.subtree(1 - s, lab[j], c, side_height));
    }
    if (!H.is_trivial())
      H = dp.constrain(s, fixed, ch);
    msg = E.image_at(lab[j - 1], H);
  }
  if (stats) {
    stats->nodes = dp.nodes();
    stats->hull_size = hull;
  }
  return sys.at(t).preimage_at(lab[1], msg);
}

const PermGroup &ThetaGrid::at(std::size_t r, std::size_t i) const
{
  if (r < 1 || r > rmax || i > imax)
    throw ArgumentError("theta cell outside the grid");
  return cells[(r - 1) * (imax + 1) + i].group;
}

ThetaGrid theta_limit(const EdgeSystem &sys, int t, std::uint64_t budget, std::size_t rmax,
                      std::size_t imax)
{
  if (rmax < 2 || imax < 1)
    throw ArgumentError("theta grid needs rmax >= 2 and imax >= 1");
  ThetaGrid g;
  g.type = t & 1;
  g.rmax = rmax;
  g.imax = imax;
  for (std::size_t r = 1; r <= rmax; ++r)
    for (std::size_t i = 0; i <= imax; ++i) {
      ThetaCell c;
      c.r = r;
      c.i = i;
      c.group = theta(sys, t, r, i, budget, &c.stats);
      g.cells.push_back(std::move(c));
    }
  auto const &E = sys.at(t);
  const PermGroup &Fw = E.stabilizer_at(sys.base[g.type]);
  g.monotone = true;
  g.subnormal = true;
  for (std::size_t r = 1; r <= rmax; ++r)
    for (std::size_t i = 0; i <= imax; ++i) {
      const PermGroup &c = g.at(r, i);
      if (r > 1 && !is_subgroup(c, g.at(r - 1, i)))
        g.monotone = false;
      if (i > 0 && !is_subgroup(c, g.at(r, i - 1)))
        g.monotone = false;
      const PermGroup &up = r == 1 ? Fw : g.at(r - 1, i);
      if (!is_subgroup(c, up) || !is_normal(c, up))
        g.subnormal = false;
    }
  g.limit = g.at(rmax, imax);
  g.stable = same_group(g.limit, g.at(rmax - 1, imax)) && same_group(g.limit, g.at(rmax, imax - 1));
  g.equals_kernel = same_group(g.limit, E.kernel_at(sys.base[g.type]));
  return g;
}

std::string to_string(Dichotomy c)
{
  return c == Dichotomy::case_i ? "case_i" : "case_ii";
}

std::vector<NamedGroup> exceptional_lambda_candidates(const PermGroup &F, Point omega)
{
  std::vector<NamedGroup> out;
  if (F.degree() == 21 && F.order() == 120960) {
    out.push_back({"W:GammaL(1,16)", point_stabilizer_subgroup(F, "socle-normalizer:5", omega)});
  } else if (F.degree() == 31 && F.order() == 372000) {
    PermGroup P = point_stabilizer_subgroup(F, "socle-normalizer:2", omega);
    PermGroup X = intersection(P, point_stabilizer_subgroup(F, "residual", omega));
    std::vector<Perm> sq;
    for (auto const &g : P.generators())
      sq.push_back(g * g);
    PermGroup Q = with_generators(X, sq);
    if (P.order() != 2400 || Q.order() != 1200)
      throw InvariantError("unexpected end-stabilizer candidate orders");
    out.push_back({"W:(SL(2,3):C4)", P});
    out.push_back({"W:(SL(2,3):C2)", Q});
  }
  return out;
}

Classification classify_dichotomy(const EdgeSystem &sys,
                                  const std::array<LocalActionSeries, 2> &series,
                                  const std::array<ThetaGrid, 2> &theta)
{
  if (!membership_HT(sys, series).in_HT)
    throw ArgumentError("classification needs a boundary-2-transitive system");
  Classification c;
  bool all_i = true, all_ii = true;
  for (int t = 0; t < 2; ++t) {
    auto &p = c.types[t];
    auto const &E = sys.at(t);
    const PermGroup &Fw = E.stabilizer_at(sys.base[t]);
    PermGroup res = soluble_residual(Fw), rad = soluble_radical(Fw);
    const PermGroup &Th = theta[t].limit;
    p.theta_order = Th.order();
    p.residual_order = res.order();
    p.radical_order = rad.order();
    p.contains_residual = is_subgroup(res, Th);
    p.within_radical = is_subgroup(Th, rad);
    p.lambda = fingerprint(series[t].limit());
    all_i = all_i && p.contains_residual;
    all_ii = all_ii && p.within_radical;
  }
  if (all_i) {
    c.verdict = Dichotomy::case_i;
  } else if (all_ii) {
    c.verdict = Dichotomy::case_ii;
    for (int t = 0; t < 2; ++t) {
      auto &p = c.types[t];
      for (auto const &cand :
           exceptional_lambda_candidates(sys.at(t).group(), sys.base[t])) {
        Verdict v = same_structure(series[t].limit(), cand.group);
        if (v != Verdict::mismatch) {
          p.lambda_match = cand.name;
          p.lambda_verdict = v;
          break;
        }
      }
    }
  } else {
    throw InvariantError("theta limits fit neither case of the dichotomy");
  }
  return c;
}

Classification classify_dichotomy(const EdgeSystem &sys)
{
  return classify_dichotomy(sys, {lambda_series(sys, 0), lambda_series(sys, 1)},
                            {theta_limit(sys, 0), theta_limit(sys, 1)});
}

}  // namespace gtree
