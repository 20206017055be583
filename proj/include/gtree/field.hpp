#pragma once

#include <cstdint>
#include <vector>

namespace gtree {

// Finite field F_q with elements encoded as 0..q-1: the base-p digits of an
// element are the coefficients of its polynomial representative, lowest first.
class Field {
 public:
  using Elt = std::uint32_t;

  explicit Field(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  // Generator of the multiplicative group (least encoding of order q-1).
  Elt mu() const { return mu_; }

  Elt add(Elt a, Elt b) const;
  Elt neg(Elt a) const;
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const;
  Elt pow(Elt a, std::uint64_t k) const;
  Elt frob(Elt a) const { return pow(a, p_); }
  std::uint64_t mult_order(Elt a) const;

  // x^k for k < e: the additive generators over the prime field.
  std::vector<Elt> prime_basis() const;

  static bool supported(std::uint32_t q);
  static std::vector<std::uint32_t> supported_orders();

 private:
  Elt poly_mul(Elt a, Elt b) const;

  std::uint32_t q_, p_, e_;
  std::vector<std::uint32_t> modulus_;  // monic, low to high, length e+1
  std::vector<Elt> add_, mul_;          // tables for q <= 64
  Elt mu_ = 1;
};

// Fixed defining polynomials: coefficients low to high, monic, degree e.
struct FieldPolynomial {
  std::uint32_t p, e;
  std::vector<std::uint32_t> coeffs;
};
const std::vector<FieldPolynomial> &field_polynomials();

}  // namespace gtree
