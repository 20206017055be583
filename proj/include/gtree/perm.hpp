#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gtree {

using Point = std::uint32_t;

// Permutation of {0, ..., degree-1}. Products act right to left:
// (a * b)(x) = a(b(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree);
  explicit Perm(std::vector<Point> images);

  // Disjoint cycle notation with 0-based points, "()" for the identity.
  static Perm parse(std::string_view text, std::size_t degree);
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>> &cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point> &images() const { return images_; }

  Perm operator*(const Perm &rhs) const;
  Perm inverse() const;
  Perm pow(long long e) const;
  bool is_identity() const;
  std::uint64_t order() const;
  std::vector<std::vector<Point>> cycles() const;
  std::string str() const;

  // Conjugate rhs by this: this * rhs * this^-1.
  Perm conj(const Perm &rhs) const;

  // Same permutation on a larger domain, fixing the new points.
  Perm extended(std::size_t degree) const;

  bool operator==(const Perm &rhs) const { return images_ == rhs.images_; }
  bool operator!=(const Perm &rhs) const { return images_ != rhs.images_; }
  bool operator<(const Perm &rhs) const { return images_ < rhs.images_; }

  std::size_t hash() const;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm &p) const { return p.hash(); }
};

std::vector<Perm> parse_perm_list(std::string_view text, std::size_t degree);

}  // namespace gtree
