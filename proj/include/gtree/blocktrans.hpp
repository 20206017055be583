#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtree/group.hpp"
#include "json.hpp"

namespace gtree {

struct BlockSystem {
  std::size_t degree = 0;
  std::vector<std::uint32_t> block_of;
  std::size_t count = 0;
  std::size_t size = 0;

  static BlockSystem singletons(std::size_t degree);
  // Throws ArgumentError unless every block has the same size.
  static BlockSystem from_labels(std::vector<std::uint32_t> labels);
  std::vector<Point> members(std::uint32_t block) const;
};

// One pass over the generators.
bool is_invariant(const PermGroup &G, const BlockSystem &blocks);

// Transitivity on k-tuples of points from pairwise distinct blocks, k in {2,3}.
bool distant_tuples_transitive(const PermGroup &G, const BlockSystem &blocks, std::size_t k);
// Number of distant k-tuples.
std::uint64_t distant_tuple_count(const BlockSystem &blocks, std::size_t k);

struct TwoBBTReport {
  std::size_t degree = 0;
  std::size_t blocks = 0;
  std::size_t block_size = 0;
  bool k1 = false, k2 = false, k3 = false;
  std::optional<std::size_t> delta_star;
  PermGroup action;  // F on F/point_stab
  BlockSystem system;
};

// F acting on F/point_stab with blocks the fibres over F/block_stab.
TwoBBTReport two_bbt_from_subgroup(const PermGroup &F, const PermGroup &block_stab,
                                   const PermGroup &point_stab);

// Orbits of O^inf(F(w)) on the points other than w.
std::size_t delta_star(const PermGroup &F, Point omega = 0);

// N-orbits on the points other than omega, or on the blocks other than
// omega's block when a block system is given. N must be normal in F(omega).
std::size_t normal_orbit_count(const PermGroup &F, Point omega, const PermGroup &N,
                               const std::optional<BlockSystem> &blocks = std::nullopt);

// Subgroup of F(omega) named by `spec`:
//   stab, derived, residual, radical, socle, sylow:p,
//   socle-normalizer:p   (socle times the normalizer of a Sylow p-subgroup
//                         of the soluble residual),
//   gens:<perm list>     (explicit generators, checked to lie in F(omega)).
PermGroup point_stabilizer_subgroup(const PermGroup &F, const std::string &spec,
                                    Point omega = 0);

nlohmann::json to_json(const TwoBBTReport &r);

}  // namespace gtree
