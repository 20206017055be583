#include <deque>

#include "gtree/error.hpp"
#include "gtree/treelocal.hpp"

namespace gtree {

TreeParams::TreeParams(std::size_t d0_, std::size_t d1_) : d0(d0_), d1(d1_)
{
  if (d0 < 3 || d1 < 3)
    throw ArgumentError("tree degrees must be at least 3");
}

StandardExtension::StandardExtension(PermGroup F, Point omega, GroupMorphism psi)
  : F_(std::move(F)), omega_(omega), psi_(std::move(psi))
{
  if (omega_ >= F_.degree())
    throw ArgumentError("base point outside the domain");
  if (psi_.domain().degree() != F_.degree() ||
      !same_group(psi_.domain(), stabilizer(F_, {omega_})))
    throw ArgumentError("psi must be defined on the base point stabilizer");
  if (!psi_.is_surjective())
    throw ArgumentError("psi is not surjective");

  // Transversal by breadth-first search over the generators, a_omega = 1.
  std::size_t n = F_.degree();
  a_.assign(n, Perm());
  std::vector<bool> seen(n, false);
  a_[omega_] = Perm(n);
  seen[omega_] = true;
  std::deque<Point> queue{omega_};
  while (!queue.empty()) {
    Point w = queue.front();
    queue.pop_front();
    for (auto const &g : F_.generators()) {
      Point v = g[w];
      if (!seen[v]) {
        seen[v] = true;
        a_[v] = g * a_[w];
        queue.push_back(v);
      }
    }
  }
  for (std::size_t w = 0; w < n; ++w)
    if (!seen[w])
      throw ArgumentError("local action is not transitive");

  stab_.reserve(n);
  for (std::size_t w = 0; w < n; ++w)
    stab_.push_back(conjugate(psi_.domain(), a_[w]));

  b_elems_ = edge_group().elements(1000000);
  for (std::size_t i = 0; i < b_elems_.size(); ++i)
    b_index_.emplace(b_elems_[i], i);
}

Perm StandardExtension::psi_at(Point w, const Perm &f) const
{
  return psi_.eval(a_[f[w]].inverse() * f * a_[w]);
}

PermGroup StandardExtension::image_at(Point w, const PermGroup &H) const
{
  return psi_.image(conjugate(H, a_[w].inverse()));
}

PermGroup StandardExtension::preimage_at(Point w, const PermGroup &M) const
{
  return conjugate(psi_.preimage(M), a_[w]);
}

PermGroup StandardExtension::kernel_at(Point w) const
{
  return conjugate(psi_.kernel(), a_[w]);
}

GroupMorphism StandardExtension::block_restriction(Point w, bool validate) const
{
  std::vector<Perm> ims;
  for (auto const &g : stab_[w].generators())
    ims.push_back(psi_at(w, g));
  return GroupMorphism(stab_[w], edge_group(), ims, validate);
}

Perm StandardExtension::alpha(const Perm &f) const
{
  std::size_t n = F_.degree(), m = b_elems_.size();
  std::vector<Point> im(n * m);
  for (std::size_t w = 0; w < n; ++w) {
    Point fw = f[static_cast<Point>(w)];
    Perm beta = psi_at(static_cast<Point>(w), f);
    for (std::size_t b = 0; b < m; ++b)
      im[w * m + b] = static_cast<Point>(fw * m + b_index_.at(beta * b_elems_[b]));
  }
  return Perm(std::move(im));
}

PermGroup StandardExtension::alpha_group() const
{
  std::vector<Perm> gens;
  for (auto const &g : F_.generators())
    gens.push_back(alpha(g));
  return PermGroup(alpha_degree(), gens, F_.order());
}

EdgeSystem edge_system(const PermGroup &F0, Point w0, const GroupMorphism &psi0,
                       const PermGroup &F1, Point w1, const GroupMorphism &psi1,
                       std::string name)
{
  if (psi0.codomain().degree() != psi1.codomain().degree() ||
      !same_group(psi0.codomain(), psi1.codomain()))
    throw ArgumentError("psi_0 and psi_1 have different codomains");
  if (transitivity_degree(F0) < 2 || transitivity_degree(F1) < 2)
    throw ArgumentError("local actions must be 2-transitive");
  EdgeSystem sys;
  sys.name = std::move(name);
  sys.params = TreeParams(F0.degree(), F1.degree());
  sys.ext[0] = StandardExtension(F0, w0, psi0);
  sys.ext[1] = StandardExtension(F1, w1, psi1);
  sys.B = psi0.codomain();
  sys.base = {w0, w1};
  for (int t = 0; t < 2; ++t)
    sys.alt[t] = sys.base[t] == 0 ? 1 : 0;
  return sys;
}

bool transitive_off(const PermGroup &G, Point omega)
{
  std::vector<Point> pts;
  for (Point x = 0; x < G.degree(); ++x)
    if (x != omega)
      pts.push_back(x);
  return orbits_on(G, pts).size() == 1;
}

EdgeInvariants edge_invariants(const EdgeSystem &sys)
{
  EdgeInvariants inv;
  for (int t = 0; t < 2; ++t) {
    auto const &E = sys.at(t);
    Point w = sys.base[t], w2 = sys.alt[t];
    inv.R[t] = E.kernel_at(w);
    inv.K[t] = E.image_at(w, stabilizer(E.group(), {w, w2}));
    inv.Kp[t] = E.image_at(w, stabilizer(E.kernel_at(w2), {w}));
  }
  for (int t = 0; t < 2; ++t) {
    auto const &E = sys.at(t);
    inv.L[t] = E.preimage_at(sys.base[t], inv.K[1 - t]);
    inv.Lp[t] = E.preimage_at(sys.base[t], inv.Kp[1 - t]);
  }
  return inv;
}

bool necessary_check(const EdgeSystem &sys, const EdgeInvariants &inv)
{
  return transitive_off(inv.L[0], sys.base[0]) && transitive_off(inv.L[1], sys.base[1]);
}

bool sufficient_check(const EdgeSystem &sys, const EdgeInvariants &inv)
{
  return transitive_off(inv.Lp[0], sys.base[0]) && transitive_off(inv.Lp[1], sys.base[1]);
}

}  // namespace gtree
