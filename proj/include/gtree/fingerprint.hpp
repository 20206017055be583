#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtree/group.hpp"
#include "gtree/structure.hpp"
#include "json.hpp"

namespace gtree {

// Structural invariants used to compare computed groups with named targets.
// The permutational fields are optional so targets can be abstract.
struct Fingerprint {
  std::uint64_t order = 1;
  std::optional<std::vector<std::size_t>> orbit_lengths;
  std::optional<std::size_t> transitivity_degree;
  std::vector<std::uint64_t> derived_orders;
  std::uint64_t radical_order = 1;
  std::uint64_t residual_order = 1;
  Kappa kappa = Kappa::zero;
  std::vector<std::uint64_t> abelian_invariants;

  bool operator==(const Fingerprint &) const = default;
};

Fingerprint fingerprint(const PermGroup &G);
Fingerprint abstract_fingerprint(const PermGroup &G);

enum class Verdict { match, conjugate, mismatch };
std::string to_string(Verdict v);

Verdict same_structure(const PermGroup &G, const Fingerprint &target);
// Fingerprint comparison, upgraded to `conjugate` when a conjugating
// permutation is found (small degree and order only).
Verdict same_structure(const PermGroup &G, const PermGroup &H);

// pi with pi G pi^-1 = H, searched for degree <= 32 and order <= 500.
std::optional<Perm> conjugating_permutation(const PermGroup &G, const PermGroup &H);

nlohmann::json to_json(const Fingerprint &f);
std::string summary(const Fingerprint &f);

}  // namespace gtree
