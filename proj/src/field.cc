#include "gtree/field.hpp"

#include <algorithm>

#include "gtree/error.hpp"
#include "gtree/structure.hpp"

namespace gtree {

namespace {

bool is_prime(std::uint32_t n)
{
  if (n < 2)
    return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

}  // namespace

std::vector<std::uint32_t> Field::supported_orders()
{
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p < 256; ++p)
    if (is_prime(p))
      out.push_back(p);
  for (auto const &fp : field_polynomials()) {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < fp.e; ++i)
      q *= fp.p;
    out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Field::supported(std::uint32_t q)
{
  auto s = supported_orders();
  return std::find(s.begin(), s.end(), q) != s.end();
}

Field::Field(std::uint32_t q) : q_(q), p_(q), e_(1)
{
  if (!supported(q))
    throw ArgumentError("unsupported field order " + std::to_string(q));
  if (!is_prime(q)) {
    for (auto const &fp : field_polynomials()) {
      std::uint32_t qq = 1;
      for (std::uint32_t i = 0; i < fp.e; ++i)
        qq *= fp.p;
      if (qq == q) {
        p_ = fp.p;
        e_ = fp.e;
        modulus_ = fp.coeffs;
      }
    }
  }
  if (q_ <= 64) {
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    for (Elt a = 0; a < q_; ++a)
      for (Elt b = 0; b < q_; ++b) {
        Elt s = 0, m = 1, x = a, y = b;
        for (std::uint32_t i = 0; i < e_; ++i) {
          s += ((x % p_ + y % p_) % p_) * m;
          x /= p_;
          y /= p_;
          m *= p_;
        }
        add_[a * q_ + b] = s;
        mul_[a * q_ + b] = poly_mul(a, b);
      }
  }
  mu_ = 0;
  for (Elt a = 1; a < q_; ++a)
    if (mult_order(a) == q_ - 1) {
      mu_ = a;
      break;
    }
  if (mu_ == 0)
    throw InvariantError("defining polynomial does not give a field");
}

Field::Elt Field::add(Elt a, Elt b) const
{
  if (!add_.empty())
    return add_[a * q_ + b];
  if (e_ == 1)
    return (a + b) % p_;
  Elt s = 0, m = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    s += ((a % p_ + b % p_) % p_) * m;
    a /= p_;
    b /= p_;
    m *= p_;
  }
  return s;
}

Field::Elt Field::neg(Elt a) const
{
  Elt s = 0, m = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    s += ((p_ - a % p_) % p_) * m;
    a /= p_;
    m *= p_;
  }
  return s;
}

Field::Elt Field::poly_mul(Elt a, Elt b) const
{
  if (e_ == 1)
    return static_cast<Elt>((static_cast<std::uint64_t>(a) * b) % p_);
  std::vector<std::uint32_t> x(e_), y(e_), r(2 * e_, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    x[i] = a % p_;
    a /= p_;
    y[i] = b % p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < e_; ++i)
    for (std::uint32_t j = 0; j < e_; ++j)
      r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
  for (std::uint32_t d = 2 * e_ - 1; d >= e_; --d) {
    std::uint32_t c = r[d];
    if (c == 0)
      continue;
    r[d] = 0;
    for (std::uint32_t k = 0; k < e_; ++k)
      r[d - e_ + k] = (r[d - e_ + k] + (p_ - c) * modulus_[k]) % p_;
  }
  Elt s = 0, m = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    s += r[i] * m;
    m *= p_;
  }
  return s;
}

Field::Elt Field::mul(Elt a, Elt b) const
{
  if (!mul_.empty())
    return mul_[a * q_ + b];
  return poly_mul(a, b);
}

Field::Elt Field::pow(Elt a, std::uint64_t k) const
{
  Elt r = 1;
  while (k) {
    if (k & 1)
      r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Field::Elt Field::inv(Elt a) const
{
  if (a == 0)
    throw ArgumentError("inverse of zero");
  return pow(a, q_ - 2);
}

std::uint64_t Field::mult_order(Elt a) const
{
  if (a == 0)
    return 0;
  std::uint64_t n = q_ - 1;
  std::uint64_t o = n;
  for (auto pr : prime_factors(n))
    while (o % pr == 0 && pow(a, o / pr) == 1)
      o /= pr;
  return o;
}

std::vector<Field::Elt> Field::prime_basis() const
{
  std::vector<Elt> b;
  Elt m = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    b.push_back(m);
    m *= p_;
  }
  return b;
}

}  // namespace gtree
