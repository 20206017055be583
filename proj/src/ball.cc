#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

#include "gtree/error.hpp"
#include "gtree/treelocal.hpp"

namespace gtree {

namespace {

struct BallVertex {
  int parent = -1;
  Point label = 0;
  int type = 0;
  std::size_t depth = 0;
  std::vector<int> child_by_label;  // -1 where the label is the parent's
};

struct Ball {
  std::vector<BallVertex> v;
  std::vector<int> interior, sphere;
};

Ball build_ball(const EdgeSystem &sys, int root_type, std::size_t radius)
{
  Ball b;
  BallVertex root;
  root.type = root_type;
  root.label = sys.base[1 - root_type];
  b.v.push_back(root);
  for (std::size_t at = 0; at < b.v.size(); ++at) {
    if (b.v[at].depth == radius) {
      b.sphere.push_back(static_cast<int>(at));
      continue;
    }
    b.interior.push_back(static_cast<int>(at));
    int s = b.v[at].type;
    std::size_t d = sys.degree(s);
    b.v[at].child_by_label.assign(d, -1);
    Point back = b.v[at].parent < 0 ? static_cast<Point>(d) : b.v[b.v[at].parent].label;
    for (Point c = 0; c < d; ++c) {
      if (c == back)
        continue;
      BallVertex u;
      u.parent = static_cast<int>(at);
      u.label = c;
      u.type = 1 - s;
      u.depth = b.v[at].depth + 1;
      b.v[at].child_by_label[c] = static_cast<int>(b.v.size());
      b.v.push_back(u);
    }
  }
  return b;
}

// For every element f of F_s: f itself and the index of psi_a(f) for all a.
struct LocalTable {
  std::vector<Perm> elems;
  std::vector<std::vector<std::size_t>> psi;  // psi[f][a]
};

LocalTable local_table(const StandardExtension &E, const std::vector<Perm> &B_elems)
{
  std::unordered_map<Perm, std::size_t, PermHash> idx;
  for (std::size_t i = 0; i < B_elems.size(); ++i)
    idx.emplace(B_elems[i], i);
  LocalTable T;
  T.elems = E.group().elements();
  for (auto const &f : T.elems) {
    std::vector<std::size_t> row;
    for (Point a = 0; a < E.points(); ++a)
      row.push_back(idx.at(E.psi_at(a, f)));
    T.psi.push_back(std::move(row));
  }
  return T;
}

}  // namespace

BallGroup ball_group_bruteforce(const EdgeSystem &sys, int root_type, std::size_t radius,
                                std::uint64_t budget)
{
  root_type &= 1;
  Ball ball = build_ball(sys, root_type, radius);
  BallGroup out;
  for (int s : ball.sphere) {
    std::vector<Point> word;
    for (int u = s; ball.v[u].parent >= 0; u = ball.v[u].parent)
      word.push_back(ball.v[u].label);
    std::reverse(word.begin(), word.end());
    out.paths.push_back(std::move(word));
  }
  if (radius == 0) {
    out.group = PermGroup::trivial(1);
    out.elements = {Perm(1)};
    out.assignments = 1;
    return out;
  }

  // Candidates: |F_root| times |R| for every other interior vertex.
  std::uint64_t count = sys.at(root_type).group().order();
  for (std::size_t k = 1; k < ball.interior.size(); ++k) {
    auto const &E = sys.at(ball.v[ball.interior[k]].type);
    std::uint64_t r = E.stabilizer_at(0).order() / sys.B.order();
    if (count > budget / r + 1)
      throw BudgetError("ball enumeration exceeds the candidate budget");
    count *= r;
  }
  if (count > budget)
    throw BudgetError("ball enumeration exceeds the candidate budget");

  std::vector<Perm> B_elems = sys.B.elements();
  std::array<LocalTable, 2> table;
  for (int t = 0; t < 2; ++t)
    table[t] = local_table(sys.at(t), B_elems);

  std::size_t n = ball.v.size();
  std::vector<int> img(n, -1);
  std::vector<std::size_t> choice(n, 0);
  std::vector<int> sphere_pos(n, -1);
  for (std::size_t i = 0; i < ball.sphere.size(); ++i)
    sphere_pos[ball.sphere[i]] = static_cast<int>(i);
  std::unordered_set<Perm, PermHash> found;
  img[0] = 0;

  auto image_of_child = [&](int w, int u) {
    const Perm &f = table[ball.v[w].type].elems[choice[w]];
    return ball.v[img[w]].child_by_label[f[ball.v[u].label]];
  };

  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == ball.interior.size()) {
      ++out.assignments;
      std::vector<Point> im(ball.sphere.size());
      for (std::size_t i = 0; i < ball.sphere.size(); ++i) {
        int s = ball.sphere[i];
        im[i] = static_cast<Point>(sphere_pos[image_of_child(ball.v[s].parent, s)]);
      }
      found.insert(Perm(std::move(im)));
      return;
    }
    int u = ball.interior[k];
    auto const &T = table[ball.v[u].type];
    if (k == 0) {
      for (std::size_t f = 0; f < T.elems.size(); ++f) {
        choice[u] = f;
        assign(k + 1);
      }
      return;
    }
    int w = ball.v[u].parent;
    img[u] = image_of_child(w, u);
    Point from = ball.v[w].label, to = ball.v[img[w]].label;
    std::size_t want = table[ball.v[w].type].psi[choice[w]][ball.v[u].label];
    for (std::size_t f = 0; f < T.elems.size(); ++f)
      if (T.elems[f][from] == to && T.psi[f][from] == want) {
        choice[u] = f;
        assign(k + 1);
      }
  };
  assign(0);

  out.elements.assign(found.begin(), found.end());
  std::sort(out.elements.begin(), out.elements.end());
  out.group = generated_subgroup(ball.sphere.size(), out.elements);
  if (out.group.order() != out.elements.size())
    throw InvariantError("ball assignments do not form a group");
  return out;
}

PathValues ball_path_groups(const EdgeSystem &sys, int t, const BallGroup &ball)
{
  t &= 1;
  if (ball.paths.empty() || ball.paths[0].size() != 2)
    throw ArgumentError("path groups need a radius-2 ball");
  Point xl = sys.base[1 - t], yl = sys.alt[1 - t], root_label = sys.base[t];
  std::size_t d = sys.degree(t);
  std::vector<std::size_t> xs, ys;
  for (std::size_t s = 0; s < ball.paths.size(); ++s) {
    if (ball.paths[s][0] == xl)
      xs.push_back(s);
    if (ball.paths[s][0] == yl)
      ys.push_back(s);
  }
  std::vector<Perm> lam, del;
  for (auto const &g : ball.elements) {
    if (ball.paths[g[xs[0]]][0] != xl || ball.paths[g[ys[0]]][0] != yl)
      continue;
    std::vector<Point> im(d);
    im[root_label] = root_label;
    for (auto s : xs)
      im[ball.paths[s][1]] = ball.paths[g[s]][1];
    Perm p(std::move(im));
    lam.push_back(p);
    bool fixes_y = std::all_of(ys.begin(), ys.end(), [&](std::size_t s) { return g[s] == s; });
    if (fixes_y)
      del.push_back(p);
  }
  return {generated_subgroup(d, lam), generated_subgroup(d, del)};
}

PathValues path_portrait_bruteforce(const EdgeSystem &sys, int t, std::size_t k,
                                    std::uint64_t budget)
{
  if (k < 1)
    throw ArgumentError("path length must be positive");
  t &= 1;
  std::vector<Point> lab = canonical_path_labels(sys, t, k);
  std::uint64_t spent = 0;
  // psi_w(f) is the B-coordinate of alpha(f) applied to (w, 1).
  auto psi_alpha = [&](const StandardExtension &E, Point w, const Perm &f) {
    auto const &Be = E.edge_elements();
    std::size_t m = Be.size();
    std::size_t one = std::find(Be.begin(), Be.end(), Perm(sys.B.degree())) - Be.begin();
    Perm a = E.alpha(f);
    return Be[a[static_cast<Point>(w * m + one)] % m];
  };
  auto spend = [&](std::uint64_t n) {
    spent += n;
    if (spent > budget)
      throw BudgetError("path portrait enumeration exceeds the budget");
  };

  PathValues out;
  for (int full = 1; full >= 0; --full) {
    std::set<Perm> S;
    int end_type = (t + static_cast<int>(k)) & 1;
    auto const &Ek = sys.at(end_type);
    if (full) {
      auto elems = Ek.stabilizer_at(lab[k - 1]).elements();
      spend(elems.size());
      for (auto const &f : elems)
        S.insert(psi_alpha(Ek, lab[k - 1], f));
    } else {
      S.insert(Perm(sys.B.degree()));
    }
    for (std::size_t j = k - 1; j >= 1; --j) {
      auto const &E = sys.at(t + static_cast<int>(j));
      auto elems = stabilizer(E.group(), {lab[j - 1], lab[j + 1]}).elements();
      spend(elems.size());
      std::set<Perm> next;
      for (auto const &f : elems)
        if (S.count(psi_alpha(E, lab[j + 1], f)))
          next.insert(psi_alpha(E, lab[j - 1], f));
      S = std::move(next);
    }
    auto const &E0 = sys.at(t);
    auto elems = E0.stabilizer_at(lab[1]).elements();
    spend(elems.size());
    std::vector<Perm> root;
    for (auto const &f : elems)
      if (S.count(psi_alpha(E0, lab[1], f)))
        root.push_back(f);
    PermGroup G = generated_subgroup(E0.points(), root);
    if (G.order() != root.size())
      throw InvariantError("path portraits do not project to a group");
    (full ? out.lambda : out.delta) = G;
  }
  return out;
}

bool valid_address(const TreeParams &tp, const TreeAddress &a)
{
  for (std::size_t j = 0; j < a.word.size(); ++j) {
    if (a.word[j] >= tp.degree(static_cast<int>(j % 2)))
      return false;
    Point back = j == 0 ? tp.degree(0) : j == 1 ? 0 : a.word[j - 2];
    if (j > 0 && a.word[j] == back)
      return false;
  }
  return true;
}

std::size_t tree_distance(const TreeAddress &a, const TreeAddress &b)
{
  std::size_t l = 0;
  while (l < a.word.size() && l < b.word.size() && a.word[l] == b.word[l])
    ++l;
  return a.word.size() + b.word.size() - 2 * l;
}

std::vector<TreeAddress> neighbours(const TreeParams &tp, const TreeAddress &a)
{
  std::vector<TreeAddress> out;
  if (!a.word.empty())
    out.push_back({std::vector<Point>(a.word.begin(), a.word.end() - 1)});
  std::size_t j = a.word.size();
  for (Point c = 0; c < tp.degree(static_cast<int>(j % 2)); ++c) {
    TreeAddress b = a;
    b.word.push_back(c);
    if (valid_address(tp, b))
      out.push_back(std::move(b));
  }
  return out;
}

std::vector<TreeAddress> sphere(const TreeParams &tp, const TreeAddress &v, std::size_t n)
{
  std::vector<TreeAddress> layer{v};
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<TreeAddress> next;
    for (auto const &u : layer)
      for (auto &w : neighbours(tp, u))
        if (tree_distance(w, v) == step + 1)
          next.push_back(std::move(w));
    layer = std::move(next);
  }
  return layer;
}

std::vector<TreeAddress> relative_sphere(const TreeParams &tp, const TreeAddress &x,
                                         const TreeAddress &y, std::size_t k)
{
  std::size_t dxy = tree_distance(x, y);
  std::vector<TreeAddress> out;
  for (auto &z : sphere(tp, y, k))
    if (tree_distance(x, z) == dxy + k)
      out.push_back(std::move(z));
  return out;
}

std::string to_string(ArcPair p)
{
  return p == ArcPair::elliptic ? "elliptic" : "hyperbolic";
}

ArcPair classify_arc_pair(const TreeParams &tp, const Arc &a, const Arc &b)
{
  for (auto const *arc : {&a, &b}) {
    if (!valid_address(tp, arc->tail) || !valid_address(tp, arc->head))
      throw ArgumentError("arc endpoint is not a valid address");
    if (tree_distance(arc->tail, arc->head) != 1)
      throw ArgumentError("arc endpoints are not adjacent");
  }
  bool same_ends = (a.tail == b.tail && a.head == b.head) ||
                   (a.tail == b.head && a.head == b.tail);
  if (!same_ends && tree_distance(a.tail, b.tail) == tree_distance(a.head, b.head))
    return ArcPair::hyperbolic;
  return ArcPair::elliptic;
}

}  // namespace gtree
