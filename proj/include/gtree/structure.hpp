#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtree/group.hpp"

namespace gtree {

PermGroup normal_closure(const PermGroup &G, const std::vector<Perm> &elements);
PermGroup derived_subgroup(const PermGroup &G);
std::vector<PermGroup> derived_series(const PermGroup &G);
PermGroup soluble_residual(const PermGroup &G);
bool is_soluble(const PermGroup &G);
bool is_perfect(const PermGroup &G);
PermGroup soluble_radical(const PermGroup &G);

enum class Kappa { zero, one, many };
std::string to_string(Kappa k);
Kappa kappa_class(const PermGroup &G);

std::vector<PermGroup> minimal_normal_subgroups(const PermGroup &G);
PermGroup socle(const PermGroup &G);

struct ConjugacyClasses {
  std::vector<Perm> reps;
  std::vector<std::uint64_t> sizes;
  bool exhaustive = true;  // false: reps came from random sampling
};

// Exact up to `exact_limit`; larger groups get randomly sampled
// representatives with exhaustive = false.
ConjugacyClasses conjugacy_classes(const PermGroup &G, std::uint64_t exact_limit = 200000);

// Every normal subgroup; intended for small groups.
std::vector<PermGroup> normal_subgroups(const PermGroup &G);

PermGroup normalizer(const PermGroup &G, const PermGroup &H);
PermGroup centralizer(const PermGroup &G, const PermGroup &H);
PermGroup sylow_subgroup(const PermGroup &G, std::uint64_t p);

// Elementary divisors of G/G', ascending.
std::vector<std::uint64_t> abelian_invariants(const PermGroup &G,
                                              std::size_t index_bound = 100000);

// A generating set of at most a few elements, found by seeded random search.
std::vector<Perm> small_generating_set(const PermGroup &G, std::uint64_t seed = 7);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace gtree
