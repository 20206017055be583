#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "gtree/morphism.hpp"
#include "gtree/treelocal.hpp"

namespace gtree {

// Plain-text system description:
//
//   [local_action_0]          [edge_group]
//   group = pgammal:3:5       degree = 5
//   base = 0                  generators = (0 1 2 3 4), (0 1)
//
//   [psi_0]
//   preset = residual_projective | quotient
//   map = (1 2) -> (0 1)      (one line per generator of F(base), instead of a preset)
//
// and likewise [local_action_1], [psi_1]. Lines starting with '#' are comments.
struct SystemConfig {
  std::string name;
  std::array<std::string, 2> group;
  std::array<Point, 2> base{0, 0};
  std::size_t edge_degree = 1;
  std::string edge_generators;
  std::array<std::string, 2> preset;
  std::array<std::vector<std::pair<std::string, std::string>>, 2> map;
};

SystemConfig parse_system_config(std::istream &in, const std::string &name);
SystemConfig load_system_config(const std::string &path);
EdgeSystem build_system(const SystemConfig &cfg);
EdgeSystem load_system(const std::string &path);

// Path of a bundled system file by stem, e.g. "fano".
std::string bundled_system(const std::string &stem);
std::vector<std::string> bundled_system_names();

// A surjection X -> B found through the action of X on the cosets of a
// subgroup of index deg(B), conjugated into B. B must be trivial or
// transitive. Throws ArgumentError when no candidate subgroup works.
GroupMorphism surjection_onto(const PermGroup &X, const PermGroup &B);

// A seeded well-formed system over small 2-transitive groups, relabelled by
// random conjugation.
EdgeSystem random_edge_system(std::uint64_t seed);

}  // namespace gtree
