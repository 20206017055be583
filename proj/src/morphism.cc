#include "gtree/morphism.hpp"

#include <mutex>

#include "gtree/error.hpp"

namespace gtree {

namespace {

constexpr std::size_t kWordCap = 1000000;

}  // namespace

struct GroupMorphism::Lazy {
  bool validated = false;
  std::once_flag graph_once, kernel_once;
  std::unique_ptr<StabChain> graph, kern;
};

GroupMorphism::GroupMorphism(PermGroup domain, PermGroup codomain,
                             std::vector<Perm> images, bool validate)
  : domain_(std::move(domain)), codomain_(std::move(codomain)),
    images_(std::move(images)), lazy_(std::make_shared<Lazy>())
{
  if (images_.size() != domain_.generators().size())
    throw ArgumentError("need exactly one image per domain generator");
  for (auto const &im : images_)
    if (im.degree() != codomain_.degree())
      throw ArgumentError("image degree does not match codomain");
  lazy_->validated = validate;
  if (validate) {
    for (auto const &im : images_)
      if (!codomain_.contains(im))
        throw ArgumentError("generator image outside the codomain");
    try {
      graph_chain();
    } catch (const ArgumentError &) {
      throw ArgumentError("generator map does not extend to a homomorphism");
    }
    if (graph_chain().order() != domain_.order())
      throw ArgumentError("generator map does not extend to a homomorphism");
  }
}

Perm GroupMorphism::pair(const Perm &g, const Perm &h) const
{
  std::size_t n = domain_.degree(), m = codomain_.degree();
  std::vector<Point> im(n + m);
  for (std::size_t x = 0; x < n; ++x)
    im[x] = g[static_cast<Point>(x)];
  for (std::size_t y = 0; y < m; ++y)
    im[n + y] = static_cast<Point>(n + h[static_cast<Point>(y)]);
  return Perm(std::move(im));
}

const StabChain &GroupMorphism::graph_chain() const
{
  std::call_once(lazy_->graph_once, [this] {
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < images_.size(); ++i)
      gens.push_back(pair(domain_.generators()[i], images_[i]));
    ChainOptions opt;
    opt.base_limit = domain_.degree();
    // Without validation the map is known to be a homomorphism.
    if (!lazy_->validated)
      opt.order_bound = domain_.order();
    lazy_->graph = std::make_unique<StabChain>(
        domain_.degree() + codomain_.degree(), gens, opt);
  });
  return *lazy_->graph;
}

const StabChain &GroupMorphism::kernel_chain() const
{
  std::call_once(lazy_->kernel_once, [this] {
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < images_.size(); ++i)
      gens.push_back(pair(domain_.generators()[i], images_[i]));
    ChainOptions opt;
    std::size_t n = domain_.degree(), m = codomain_.degree();
    for (std::size_t y = 0; y < m; ++y)
      opt.prefix.push_back(static_cast<Point>(n + y));
    opt.order_bound = domain_.order();
    lazy_->kern = std::make_unique<StabChain>(n + m, gens, opt);
  });
  return *lazy_->kern;
}

Perm GroupMorphism::eval(const Perm &g) const
{
  std::size_t n = domain_.degree(), m = codomain_.degree();
  if (g.degree() != n)
    throw ArgumentError("degree mismatch in morphism evaluation");
  auto const &C = graph_chain();
  std::vector<Point> h = g.images();
  std::vector<Point> c(m);
  for (std::size_t y = 0; y < m; ++y)
    c[y] = static_cast<Point>(y);
  std::size_t letters = 0;
  for (auto const &L : C.levels()) {
    std::int32_t i = L.pos[h[L.base]];
    if (i < 0)
      throw ArgumentError("element is not in the morphism domain");
    auto const &t = L.inv_trans[static_cast<std::size_t>(i)];
    for (std::size_t x = 0; x < n; ++x)
      h[x] = t[h[x]];
    for (std::size_t y = 0; y < m; ++y)
      c[y] = static_cast<Point>(t[static_cast<Point>(n + c[y])] - n);
    if (++letters > kWordCap)
      throw BudgetError("sift word exceeds the letter cap");
  }
  for (std::size_t x = 0; x < n; ++x)
    if (h[x] != x)
      throw ArgumentError("element is not in the morphism domain");
  return Perm(std::move(c)).inverse();
}

PermGroup GroupMorphism::image() const
{
  return PermGroup(codomain_.degree(), images_);
}

PermGroup GroupMorphism::image(const PermGroup &H) const
{
  if (!is_subgroup(H, domain_))
    throw ArgumentError("image of a group outside the morphism domain");
  std::vector<Perm> gens;
  for (auto const &h : H.generators())
    gens.push_back(eval(h));
  return PermGroup(codomain_.degree(), gens, H.order());
}

PermGroup GroupMorphism::kernel() const
{
  auto const &C = kernel_chain();
  std::size_t k = C.prefix_levels();
  std::size_t n = domain_.degree();
  std::vector<Perm> gens;
  for (auto const &s : C.stabilizer_gens(k)) {
    std::vector<Point> im(s.images().begin(), s.images().begin() + static_cast<long>(n));
    gens.push_back(Perm(std::move(im)));
  }
  return PermGroup(n, gens, C.stabilizer_order(k));
}

bool GroupMorphism::is_surjective() const
{
  return same_group(image(), codomain_);
}

Perm GroupMorphism::lift(const Perm &s) const
{
  std::size_t n = domain_.degree(), m = codomain_.degree();
  if (s.degree() != m)
    throw ArgumentError("degree mismatch in lift");
  auto const &C = kernel_chain();
  Perm P(n + m);
  Perm cur = pair(Perm(n), s);
  for (std::size_t k = 0; k < C.prefix_levels(); ++k) {
    auto const &L = C.levels()[k];
    std::int32_t i = L.pos[cur[L.base]];
    if (i < 0)
      throw ArgumentError("element is not in the morphism image");
    auto const &t = L.inv_trans[static_cast<std::size_t>(i)];
    cur = t * cur;
    P = t * P;
  }
  for (std::size_t y = 0; y < m; ++y)
    if (cur[static_cast<Point>(n + y)] != n + y)
      throw ArgumentError("element is not in the morphism image");
  Perm d = P.inverse();
  std::vector<Point> im(d.images().begin(), d.images().begin() + static_cast<long>(n));
  return Perm(std::move(im));
}

PermGroup GroupMorphism::preimage(const PermGroup &S) const
{
  if (S.degree() != codomain_.degree() || !is_subgroup(S, codomain_))
    throw ArgumentError("preimage of a group outside the codomain");
  PermGroup im = image();
  PermGroup T = is_subgroup(S, im) ? S : intersection(S, im);
  PermGroup ker = kernel();
  std::vector<Perm> gens = ker.generators();
  for (auto const &s : T.generators())
    gens.push_back(lift(s));
  return PermGroup(domain_.degree(), gens, ker.order() * T.order());
}

GroupMorphism GroupMorphism::restrict(const PermGroup &H) const
{
  if (!is_subgroup(H, domain_))
    throw ArgumentError("restriction to a group outside the morphism domain");
  std::vector<Perm> ims;
  for (auto const &h : H.generators())
    ims.push_back(eval(h));
  return GroupMorphism(H, codomain_, ims, false);
}

GroupMorphism GroupMorphism::then(const GroupMorphism &after) const
{
  if (after.domain().degree() != codomain_.degree())
    throw ArgumentError("composition degree mismatch");
  std::vector<Perm> ims;
  for (auto const &g : images_)
    ims.push_back(after.eval(g));
  return GroupMorphism(domain_, after.codomain(), ims, false);
}

GroupMorphism identity_morphism(const PermGroup &G)
{
  return GroupMorphism(G, G, G.generators(), false);
}

CosetSpace::CosetSpace(const PermGroup &G, const PermGroup &H, std::size_t index_bound)
  : G_(G), H_(H)
{
  if (!is_subgroup(H, G))
    throw ArgumentError("coset action needs a subgroup");
  std::uint64_t idx = G.order() / H.order();
  if (idx > index_bound)
    throw BudgetError("coset index " + std::to_string(idx) + " exceeds bound " +
                      std::to_string(index_bound));
  reps_.reserve(idx);
  Perm e(G.degree());
  reps_.push_back(canonical(e));
  index_.emplace(reps_[0], 0);
  std::vector<std::vector<Point>> act(G.generators().size());
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    for (std::size_t s = 0; s < G.generators().size(); ++s) {
      Perm c = canonical(G.generators()[s] * reps_[i]);
      auto [it, fresh] = index_.emplace(c, reps_.size());
      if (fresh)
        reps_.push_back(c);
      act[s].push_back(static_cast<Point>(it->second));
    }
  }
  if (reps_.size() != idx)
    throw InvariantError("coset enumeration found a wrong number of cosets");
  for (auto &a : act)
    action_.push_back(Perm(std::move(a)));
}

Perm CosetSpace::canonical(const Perm &g) const
{
  Perm x = g;
  for (auto const &L : H_.chain().levels()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < L.orbit.size(); ++i)
      if (x[L.orbit[i]] < x[L.orbit[best]])
        best = i;
    if (best != 0)
      x = x * L.inv_trans[best].inverse();
  }
  return x;
}

std::size_t CosetSpace::index_of(const Perm &g) const
{
  auto it = index_.find(canonical(g));
  if (it == index_.end())
    throw ArgumentError("element outside the acting group");
  return it->second;
}

CosetAction coset_action(const PermGroup &G, const PermGroup &H, std::size_t index_bound)
{
  CosetSpace cs(G, H, index_bound);
  std::size_t deg = std::max<std::size_t>(cs.size(), 1);
  std::vector<Perm> gens = cs.action();
  PermGroup image(deg, gens);
  GroupMorphism map(G, image, gens, false);
  return {image, map};
}

}  // namespace gtree
