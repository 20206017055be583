#include "gtree/perm.hpp"

#include <numeric>
#include <sstream>

#include "gtree/error.hpp"

namespace gtree {

Perm::Perm(std::size_t degree) : images_(degree)
{
  std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images))
{
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw ArgumentError("image sequence is not a bijection");
    seen[x] = true;
  }
}

Perm Perm::from_cycles(std::size_t degree,
                       const std::vector<std::vector<Point>> &cycles)
{
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (auto const &c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree)
        throw ArgumentError("cycle point " + std::to_string(c[i]) +
                            " outside degree " + std::to_string(degree));
      if (used[c[i]])
        throw ArgumentError("point repeated in cycle notation");
      used[c[i]] = true;
      im[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(im));
}

Perm Perm::parse(std::string_view text, std::size_t degree)
{
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ','))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(')
      throw ArgumentError("expected '(' in permutation: " + std::string(text));
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip();
      if (i >= text.size())
        throw ArgumentError("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9')
        throw ArgumentError("bad character in permutation: " + std::string(text));
      unsigned long v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<unsigned long>(text[i] - '0');
        if (v > 100000000UL)
          throw ArgumentError("point out of range");
        ++i;
      }
      cyc.push_back(static_cast<Point>(v));
    }
    if (cyc.size() > 1)
      cycles.push_back(std::move(cyc));
    else if (cyc.size() == 1 && cyc[0] >= degree)
      throw ArgumentError("cycle point outside degree");
    skip();
  }
  return from_cycles(degree, cycles);
}

std::vector<Perm> parse_perm_list(std::string_view text, std::size_t degree)
{
  // Permutations separated by ';' or by ',' between ')' and '('.
  std::vector<Perm> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    bool blank = cur.find_first_not_of(" \t") == std::string::npos;
    if (!blank)
      out.push_back(Perm::parse(cur, degree));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (depth == 0 && (c == ';' || c == ',')) {
      flush();
      continue;
    }
    cur.push_back(c);
  }
  flush();
  return out;
}

Perm Perm::operator*(const Perm &rhs) const
{
  if (rhs.degree() != degree())
    throw ArgumentError("degree mismatch in product");
  std::vector<Point> im(degree());
  for (std::size_t x = 0; x < im.size(); ++x)
    im[x] = images_[rhs.images_[x]];
  Perm p;
  p.images_ = std::move(im);
  return p;
}

Perm Perm::inverse() const
{
  Perm p;
  p.images_.resize(degree());
  for (std::size_t x = 0; x < degree(); ++x)
    p.images_[images_[x]] = static_cast<Point>(x);
  return p;
}

Perm Perm::conj(const Perm &rhs) const
{
  // x -> this(rhs(this^-1(x))): send this(y) to this(rhs(y)).
  Perm p;
  p.images_.resize(degree());
  for (std::size_t y = 0; y < degree(); ++y)
    p.images_[images_[y]] = images_[rhs.images_[y]];
  return p;
}

Perm Perm::pow(long long e) const
{
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  Perm acc(degree());
  while (n) {
    if (n & 1)
      acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool Perm::is_identity() const
{
  for (std::size_t x = 0; x < degree(); ++x)
    if (images_[x] != x)
      return false;
  return true;
}

std::uint64_t Perm::order() const
{
  std::uint64_t ord = 1;
  for (auto const &c : cycles())
    ord = std::lcm(ord, static_cast<std::uint64_t>(c.size()));
  return ord;
}

std::vector<std::vector<Point>> Perm::cycles() const
{
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree(), false);
  for (Point x = 0; x < degree(); ++x) {
    if (seen[x] || images_[x] == x)
      continue;
    std::vector<Point> c;
    for (Point y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Perm::str() const
{
  auto cs = cycles();
  if (cs.empty())
    return "()";
  std::ostringstream os;
  for (auto const &c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i)
      os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

Perm Perm::extended(std::size_t degree) const
{
  if (degree < this->degree())
    throw ArgumentError("cannot shrink a permutation");
  Perm p(degree);
  for (std::size_t x = 0; x < this->degree(); ++x)
    p.images_[x] = images_[x];
  return p;
}

std::size_t Perm::hash() const
{
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : images_) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

}  // namespace gtree
