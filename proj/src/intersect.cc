#include <functional>

#include "gtree/error.hpp"
#include "gtree/group.hpp"

namespace gtree {

namespace {

constexpr std::uint64_t kBruteLimit = 10000;

// Is there an element of the chain mapping base[j] to img[j] for j < k?
bool extendable(const StabChain &C, const std::vector<Point> &base,
                std::vector<Point> img, std::size_t k)
{
  auto const &levels = C.levels();
  std::size_t li = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (li < levels.size() && levels[li].base == base[j]) {
      auto const &L = levels[li++];
      std::int32_t i = L.pos[img[j]];
      if (i < 0)
        return false;
      auto const &t = L.inv_trans[static_cast<std::size_t>(i)];
      for (std::size_t r = j; r < k; ++r)
        img[r] = t[img[r]];
    } else if (img[j] != base[j]) {
      return false;
    }
  }
  return true;
}

}  // namespace

PermGroup intersection(const PermGroup &H, const PermGroup &K)
{
  if (H.degree() != K.degree())
    throw ArgumentError("degree mismatch in intersection");
  if (is_subgroup(H, K))
    return H;
  if (is_subgroup(K, H))
    return K;
  const PermGroup &A = H.order() <= K.order() ? H : K;
  const PermGroup &O = H.order() <= K.order() ? K : H;

  if (A.order() <= kBruteLimit) {
    std::vector<Perm> common;
    A.for_each_element([&](const Perm &g) {
      if (O.contains(g))
        common.push_back(g);
    });
    return generated_subgroup(A.degree(), common);
  }

  // Backtrack over A's chain with the base images pruned against O.
  auto const &CA = A.chain();
  std::vector<Point> base = CA.base();
  StabChain CO = O.chain_with_prefix(base);
  auto const &levels = CA.levels();
  PermGroup R = PermGroup::trivial(A.degree());
  std::vector<Point> img(base.size());

  std::function<void(std::size_t, const Perm &)> rec = [&](std::size_t k, const Perm &p) {
    if (k == levels.size()) {
      if (!p.is_identity() && CO.contains(p) && !R.contains(p))
        R = with_generators(R, {p});
      return;
    }
    for (auto const &t : levels[k].inv_trans) {
      Perm q = p * t.inverse();
      for (std::size_t j = 0; j <= k; ++j)
        img[j] = q[base[j]];
      if (!extendable(CO, base, img, k + 1))
        continue;
      rec(k + 1, q);
    }
  };
  rec(0, Perm(A.degree()));
  return R;
}

}  // namespace gtree
