#include "gtree/catalog.hpp"
#include "gtree/field.hpp"

namespace gtree {

// Conway polynomials; each is checked at field construction by the search
// for an element of order q-1.
const std::vector<FieldPolynomial> &field_polynomials()
{
  static const std::vector<FieldPolynomial> table = {
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 1, 1, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {3, 2, {2, 2, 1}},
      {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 0, 0, 2, 1}},
      {3, 5, {1, 2, 0, 0, 0, 1}},
      {5, 2, {2, 4, 1}},
      {5, 3, {3, 3, 0, 1}},
      {7, 2, {3, 6, 1}},
      {11, 2, {2, 7, 1}},
      {13, 2, {2, 12, 1}},
  };
  return table;
}

// Two generators of M11 on 11 points; verified whenever the group is built.
extern const char *const kMathieu11Generators;
const char *const kMathieu11Generators =
    "(0 1 2 3 4 5 6 7 8 9 10), (2 6 10 7)(3 9 4 5)";

}  // namespace gtree
