#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtree/field.hpp"
#include "gtree/group.hpp"
#include "gtree/morphism.hpp"

namespace gtree {

enum class Flavor { psl, pgl, pgammal };

struct CatalogEntry {
  std::string name;
  PermGroup group;
  std::string family;
  std::uint32_t dim = 0;  // vector space dimension for linear families
  std::uint32_t q = 0;
  std::uint32_t e_G = 1;  // index over the projective general part
  std::uint64_t formula_order = 0;
  std::optional<std::uint64_t> seed;  // randomized constructions only
};

// Points of P(F_q^dim): normalized vectors (first nonzero coordinate 1) in
// lexicographic order.
class ProjectiveSpace {
 public:
  using Vec = std::vector<Field::Elt>;
  ProjectiveSpace(const Field &F, std::uint32_t dim);

  std::size_t size() const { return points_.size(); }
  const Vec &point(std::size_t i) const { return points_[i]; }
  std::size_t index_of(Vec v) const;  // v nonzero, any scaling
  const Field &field() const { return F_; }
  std::uint32_t dim() const { return dim_; }

  // Permutation induced by a dim x dim matrix (row-major), acting on columns.
  Perm matrix_action(const std::vector<Field::Elt> &A) const;
  Perm frobenius_action() const;

 private:
  std::size_t key(const Vec &v) const;

  Field F_;
  std::uint32_t dim_;
  std::vector<Vec> points_;
  std::vector<std::int64_t> lookup_;
};

std::uint64_t gl_order(std::uint32_t dim, std::uint32_t q);

CatalogEntry symmetric(std::size_t d);
CatalogEntry alternating(std::size_t d);
CatalogEntry projective_group(std::uint32_t dim, std::uint32_t q, Flavor flavor);
PermGroup gamma_l1(std::uint32_t q);

// Linear groups on the q^a vectors of F_q^a, vector index sum v_i q^i.
// kind: "gl", "sl", "gammal", "mult" (scalars), "gammal1" (a = 1).
PermGroup linear_group_on_vectors(std::uint32_t q, std::uint32_t a, const std::string &kind);
CatalogEntry affine_group(std::uint32_t q, std::uint32_t a, const PermGroup &linear_part,
                          const std::string &linear_name = "custom");

struct Sl25Embedding {
  CatalogEntry entry;
  PermGroup sl25;        // the SL(2,5) copy acting on vectors
  std::uint64_t attempts = 0;
};
Sl25Embedding exceptional_sl25_affine_search(std::uint32_t q, std::uint64_t seed = 20240601);
CatalogEntry exceptional_sl25_affine(std::uint32_t q, std::uint64_t seed = 20240601);

CatalogEntry mathieu11();

// "sym:d", "alt:d", "psl:n:q", "pgl:n:q", "pgammal:n:q", "gammal1:q", "m11",
// "sl25affine:q", "affine:q:a:<gl|sl|gammal|mult|gammal1>".
CatalogEntry catalog(const std::string &name);

// F(omega) -> its action on the lines through omega, i.e. on P(V/omega).
GroupMorphism residual_projective_action(std::uint32_t dim, std::uint32_t q, Flavor flavor,
                                         Point omega);

}  // namespace gtree
