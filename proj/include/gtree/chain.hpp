#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gtree/perm.hpp"

namespace gtree {

struct ChainLevel {
  Point base = 0;
  std::vector<Perm> gens;   // strong generators fixing all earlier base points
  std::vector<Point> orbit;
  std::vector<std::int32_t> pos;  // point -> index in orbit, or -1
  std::vector<Perm> inv_trans;    // inv_trans[i] maps orbit[i] to base
  std::vector<std::int32_t> parent;      // BFS tree: index of parent in orbit
  std::vector<std::int32_t> parent_gen;  // generator used from parent
};

struct ChainOptions {
  std::vector<Point> prefix;                 // required leading base points
  std::optional<std::uint64_t> order_bound;  // upper bound; stops early once reached
  std::size_t base_limit = 0;                // new base points must be below this (0: no limit)
  std::uint64_t seed = 0x5eedULL;
};

// Base and strong generating set, built by random Schreier-Sims followed by a
// deterministic Schreier generator check unless the known order is reached.
class StabChain {
 public:
  StabChain() = default;
  StabChain(std::size_t degree, const std::vector<Perm> &gens,
            const ChainOptions &opt = {});

  std::size_t degree() const { return degree_; }
  std::uint64_t order() const;
  const std::vector<ChainLevel> &levels() const { return levels_; }
  std::vector<Point> base() const;

  // Number of levels created for the prefix points (fixed prefix points are
  // skipped when the whole group fixes them).
  std::size_t prefix_levels() const { return prefix_levels_; }

  // Residue of sifting g from level `from`, and the level where it stopped.
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from = 0) const;
  bool contains(const Perm &g) const;

  // Strong generators of the subgroup fixing the first `level` base points.
  std::vector<Perm> stabilizer_gens(std::size_t level) const;
  std::uint64_t stabilizer_order(std::size_t level) const;

 private:
  std::size_t degree_ = 0;
  std::vector<ChainLevel> levels_;
  std::size_t prefix_levels_ = 0;
};

}  // namespace gtree
