#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "gtree/chain.hpp"
#include "gtree/perm.hpp"

namespace gtree {

// Permutation group given by generators. The stabilizer chain is built on
// first use and shared between copies.
class PermGroup {
 public:
  PermGroup();
  PermGroup(std::size_t degree, std::vector<Perm> gens,
            std::optional<std::uint64_t> order_bound = std::nullopt);

  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }
  const StabChain &chain() const;
  std::uint64_t order() const { return chain().order(); }
  bool contains(const Perm &p) const;
  bool is_trivial() const { return order() == 1; }

  // Chain with the given base prefix (not cached).
  StabChain chain_with_prefix(const std::vector<Point> &prefix) const;

  // All elements, throws BudgetError above `limit`.
  std::vector<Perm> elements(std::uint64_t limit = 2000000) const;
  void for_each_element(const std::function<void(const Perm &)> &f,
                        std::uint64_t limit = 2000000) const;

  Perm random_element(std::mt19937_64 &rng) const;

 private:
  struct Lazy;
  std::size_t degree_ = 1;
  std::vector<Perm> gens_;
  std::optional<std::uint64_t> order_bound_;
  std::shared_ptr<Lazy> lazy_;
};

std::vector<Point> orbit(const PermGroup &G, Point x);
std::vector<std::vector<Point>> orbits(const PermGroup &G);
std::vector<std::vector<Point>> orbits_on(const PermGroup &G,
                                          const std::vector<Point> &points);
bool is_transitive(const PermGroup &G);

// Pointwise stabilizer of the listed points.
PermGroup stabilizer(const PermGroup &G, const std::vector<Point> &points);
std::size_t transitivity_degree(const PermGroup &G);

bool is_subgroup(const PermGroup &H, const PermGroup &G);
bool same_group(const PermGroup &H, const PermGroup &G);
bool is_normal(const PermGroup &N, const PermGroup &G);
bool normalizes(const Perm &g, const PermGroup &N);

PermGroup join(const PermGroup &H, const PermGroup &K);
PermGroup with_generators(const PermGroup &G, const std::vector<Perm> &extra);
PermGroup conjugate(const PermGroup &G, const Perm &pi);

PermGroup intersection(const PermGroup &H, const PermGroup &K);

// Subgroup generated by elements, adding only those that enlarge it.
PermGroup generated_subgroup(std::size_t degree, const std::vector<Perm> &elements);

}  // namespace gtree
