#pragma once

#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gtree/group.hpp"

namespace gtree {

// Homomorphism given by generator images. Evaluation and kernels use the
// graph group <(g, phi(g))> acting on the disjoint union of both domains.
class GroupMorphism {
 public:
  GroupMorphism() = default;
  // With validate, throws ArgumentError unless the map extends to a
  // homomorphism into the codomain.
  GroupMorphism(PermGroup domain, PermGroup codomain, std::vector<Perm> images,
                bool validate = true);

  const PermGroup &domain() const { return domain_; }
  const PermGroup &codomain() const { return codomain_; }
  const std::vector<Perm> &images() const { return images_; }

  Perm eval(const Perm &g) const;
  PermGroup image() const;
  PermGroup image(const PermGroup &H) const;
  PermGroup preimage(const PermGroup &S) const;
  PermGroup kernel() const;
  bool is_surjective() const;
  // Some g with eval(g) == s; throws if s is not in the image.
  Perm lift(const Perm &s) const;

  GroupMorphism restrict(const PermGroup &H) const;
  // after o this
  GroupMorphism then(const GroupMorphism &after) const;

 private:
  struct Lazy;
  const StabChain &graph_chain() const;
  const StabChain &kernel_chain() const;
  Perm pair(const Perm &g, const Perm &h) const;

  PermGroup domain_, codomain_;
  std::vector<Perm> images_;
  std::shared_ptr<Lazy> lazy_;
};

GroupMorphism identity_morphism(const PermGroup &G);

// Left cosets gH of H in G, each stored as its canonical element (the member
// of gH with lexicographically least images of H's base).
class CosetSpace {
 public:
  CosetSpace(const PermGroup &G, const PermGroup &H, std::size_t index_bound = 100000);

  std::size_t size() const { return reps_.size(); }
  const std::vector<Perm> &representatives() const { return reps_; }
  // Index of the coset gH; g must lie in G.
  std::size_t index_of(const Perm &g) const;
  // Action of each generator of G on the cosets.
  const std::vector<Perm> &action() const { return action_; }

 private:
  Perm canonical(const Perm &g) const;

  PermGroup G_, H_;
  std::vector<Perm> reps_;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
  std::vector<Perm> action_;
};

struct CosetAction {
  PermGroup image;
  GroupMorphism map;
};

CosetAction coset_action(const PermGroup &G, const PermGroup &H,
                         std::size_t index_bound = 100000);

}  // namespace gtree
