#include "gtree/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gtree/error.hpp"
#include "gtree/structure.hpp"

namespace gtree {

extern const char *const kMathieu11Generators;

namespace {

using Elt = Field::Elt;
using Mat = std::vector<Elt>;

std::uint64_t ipow(std::uint64_t b, std::uint32_t e)
{
  std::uint64_t r = 1;
  while (e--)
    r *= b;
  return r;
}

std::uint64_t factorial(std::size_t d)
{
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= d; ++i) {
    if (f > UINT64_MAX / i)
      throw BudgetError("symmetric group order exceeds 64 bits");
    f *= i;
  }
  return f;
}

Mat identity(std::uint32_t n)
{
  Mat A(n * n, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    A[i * n + i] = 1;
  return A;
}

// Transvections I + b E_ij over the prime basis, plus diag(mu,1,...) if asked.
std::vector<Mat> linear_generators(const Field &F, std::uint32_t n, bool with_det)
{
  std::vector<Mat> out;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j)
        continue;
      for (Elt b : F.prime_basis()) {
        Mat A = identity(n);
        A[i * n + j] = b;
        out.push_back(A);
      }
    }
  if (with_det && F.q() > 2) {
    Mat D = identity(n);
    D[0] = F.mu();
    out.push_back(D);
  }
  return out;
}

std::vector<Elt> decode(std::size_t idx, std::uint32_t q, std::uint32_t a)
{
  std::vector<Elt> v(a);
  for (std::uint32_t i = 0; i < a; ++i) {
    v[i] = static_cast<Elt>(idx % q);
    idx /= q;
  }
  return v;
}

std::size_t encode(const std::vector<Elt> &v, std::uint32_t q)
{
  std::size_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;)
    idx = idx * q + v[i];
  return idx;
}

std::vector<Elt> apply(const Field &F, const Mat &A, const std::vector<Elt> &v)
{
  std::size_t n = v.size();
  std::vector<Elt> w(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w[i] = F.add(w[i], F.mul(A[i * n + j], v[j]));
  return w;
}

Perm vector_matrix_action(const Field &F, std::uint32_t a, const Mat &A)
{
  std::size_t N = ipow(F.q(), a);
  std::vector<Point> im(N);
  for (std::size_t x = 0; x < N; ++x)
    im[x] = static_cast<Point>(encode(apply(F, A, decode(x, F.q(), a)), F.q()));
  return Perm(std::move(im));
}

Perm vector_frobenius(const Field &F, std::uint32_t a)
{
  std::size_t N = ipow(F.q(), a);
  std::vector<Point> im(N);
  for (std::size_t x = 0; x < N; ++x) {
    auto v = decode(x, F.q(), a);
    for (auto &c : v)
      c = F.frob(c);
    im[x] = static_cast<Point>(encode(v, F.q()));
  }
  return Perm(std::move(im));
}

std::vector<std::string> split(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(item);
  return out;
}

std::uint32_t parse_uint(const std::string &s, const std::string &name)
{
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
    throw ArgumentError("bad number '" + s + "' in catalog name " + name);
  return static_cast<std::uint32_t>(std::stoul(s));
}

}  // namespace

ProjectiveSpace::ProjectiveSpace(const Field &F, std::uint32_t dim) : F_(F), dim_(dim)
{
  if (dim < 2)
    throw ArgumentError("projective space needs dimension at least 2");
  std::size_t total = ipow(F.q(), dim);
  lookup_.assign(total, -1);
  for (std::size_t code = 0; code < total; ++code) {
    Vec v(dim);
    std::size_t c = code;
    for (std::uint32_t i = dim; i-- > 0;) {
      v[i] = static_cast<Elt>(c % F.q());
      c /= F.q();
    }
    auto nz = std::find_if(v.begin(), v.end(), [](Elt x) { return x != 0; });
    if (nz == v.end() || *nz != 1)
      continue;
    lookup_[code] = static_cast<std::int64_t>(points_.size());
    points_.push_back(v);
  }
}

std::size_t ProjectiveSpace::key(const Vec &v) const
{
  std::size_t k = 0;
  for (Elt x : v)
    k = k * F_.q() + x;
  return k;
}

std::size_t ProjectiveSpace::index_of(Vec v) const
{
  auto nz = std::find_if(v.begin(), v.end(), [](Elt x) { return x != 0; });
  if (nz == v.end())
    throw ArgumentError("zero vector has no projective point");
  Elt s = F_.inv(*nz);
  for (auto &x : v)
    x = F_.mul(x, s);
  return static_cast<std::size_t>(lookup_[key(v)]);
}

Perm ProjectiveSpace::matrix_action(const Mat &A) const
{
  std::vector<Point> im(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i)
    im[i] = static_cast<Point>(index_of(apply(F_, A, points_[i])));
  return Perm(std::move(im));
}

Perm ProjectiveSpace::frobenius_action() const
{
  std::vector<Point> im(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    Vec v = points_[i];
    for (auto &x : v)
      x = F_.frob(x);
    im[i] = static_cast<Point>(index_of(v));
  }
  return Perm(std::move(im));
}

std::uint64_t gl_order(std::uint32_t dim, std::uint32_t q)
{
  std::uint64_t o = 1, qn = ipow(q, dim);
  for (std::uint32_t i = 0; i < dim; ++i)
    o *= qn - ipow(q, i);
  return o;
}

CatalogEntry symmetric(std::size_t d)
{
  if (d < 1)
    throw ArgumentError("symmetric group needs d >= 1");
  std::vector<Perm> gens;
  if (d >= 2) {
    std::vector<Point> cyc(d);
    std::iota(cyc.begin(), cyc.end(), Point{0});
    gens.push_back(Perm::from_cycles(d, {cyc}));
    gens.push_back(Perm::from_cycles(d, {{0, 1}}));
  }
  CatalogEntry e;
  e.name = "sym:" + std::to_string(d);
  e.family = "sym";
  e.formula_order = factorial(d);
  e.group = PermGroup(d, gens, e.formula_order);
  return e;
}

CatalogEntry alternating(std::size_t d)
{
  if (d < 3)
    throw ArgumentError("alternating group needs d >= 3");
  std::vector<Perm> gens{Perm::from_cycles(d, {{0, 1, 2}})};
  if (d > 3) {
    std::vector<Point> cyc;
    for (Point i = (d % 2 ? 0 : 1); i < d; ++i)
      cyc.push_back(i);
    gens.push_back(Perm::from_cycles(d, {cyc}));
  }
  CatalogEntry e;
  e.name = "alt:" + std::to_string(d);
  e.family = "alt";
  e.formula_order = factorial(d) / 2;
  e.group = PermGroup(d, gens, e.formula_order);
  return e;
}

CatalogEntry projective_group(std::uint32_t dim, std::uint32_t q, Flavor flavor)
{
  if (dim < 2)
    throw ArgumentError("projective group needs dimension at least 2");
  Field F(q);
  ProjectiveSpace P(F, dim);
  std::vector<Perm> gens;
  for (auto const &A : linear_generators(F, dim, flavor != Flavor::psl))
    gens.push_back(P.matrix_action(A));
  if (flavor == Flavor::pgammal && F.e() > 1)
    gens.push_back(P.frobenius_action());
  CatalogEntry e;
  static const char *names[] = {"psl", "pgl", "pgammal"};
  e.family = names[static_cast<int>(flavor)];
  e.name = e.family + ":" + std::to_string(dim) + ":" + std::to_string(q);
  e.dim = dim;
  e.q = q;
  std::uint64_t pgl = gl_order(dim, q) / (q - 1);
  if (flavor == Flavor::psl)
    e.formula_order = pgl / std::gcd<std::uint64_t>(dim, q - 1);
  else if (flavor == Flavor::pgl)
    e.formula_order = pgl;
  else
    e.formula_order = pgl * F.e();
  e.e_G = flavor == Flavor::pgammal ? F.e() : 1;
  e.group = PermGroup(P.size(), gens, e.formula_order);
  return e;
}

PermGroup gamma_l1(std::uint32_t q)
{
  Field F(q);
  std::vector<Point> m(q), f(q);
  for (Elt x = 0; x < q; ++x) {
    m[x] = F.mul(F.mu(), x);
    f[x] = F.frob(x);
  }
  return PermGroup(q, {Perm(m), Perm(f)}, static_cast<std::uint64_t>(F.e()) * (q - 1));
}

PermGroup linear_group_on_vectors(std::uint32_t q, std::uint32_t a, const std::string &kind)
{
  Field F(q);
  if (a < 1)
    throw ArgumentError("vector space dimension must be positive");
  std::size_t N = ipow(q, a);
  std::vector<Perm> gens;
  std::uint64_t bound = 0;
  if (kind == "mult" || ((kind == "gl" || kind == "gammal1" || kind == "gammal") && a == 1)) {
    Mat S = identity(a);
    for (std::uint32_t i = 0; i < a; ++i)
      S[i * a + i] = F.mu();
    gens.push_back(vector_matrix_action(F, a, S));
    bound = q - 1;
    if (kind != "mult" && kind != "gl") {
      gens.push_back(vector_frobenius(F, a));
      bound *= F.e();
    }
  } else if (kind == "gl" || kind == "sl" || kind == "gammal") {
    for (auto const &A : linear_generators(F, a, kind != "sl"))
      gens.push_back(vector_matrix_action(F, a, A));
    bound = gl_order(a, q);
    if (kind == "sl")
      bound /= (q - 1);
    if (kind == "gammal") {
      gens.push_back(vector_frobenius(F, a));
      bound *= F.e();
    }
  } else {
    throw ArgumentError("unknown linear part '" + kind + "'");
  }
  return PermGroup(N, gens, bound);
}

CatalogEntry affine_group(std::uint32_t q, std::uint32_t a, const PermGroup &L,
                          const std::string &linear_name)
{
  Field F(q);
  std::size_t N = ipow(q, a);
  if (L.degree() != N)
    throw ArgumentError("linear part has the wrong degree");
  for (auto const &g : L.generators())
    if (g[0] != 0)
      throw ArgumentError("linear part must fix the zero vector");
  if (N > 1 && orbit(L, 1).size() != N - 1)
    throw ArgumentError("linear part is not transitive on nonzero vectors");
  std::vector<Perm> gens;
  for (std::uint32_t i = 0; i < a; ++i)
    for (Elt b : F.prime_basis()) {
      std::vector<Point> im(N);
      for (std::size_t x = 0; x < N; ++x) {
        auto v = decode(x, q, a);
        v[i] = F.add(v[i], b);
        im[x] = static_cast<Point>(encode(v, q));
      }
      gens.push_back(Perm(std::move(im)));
    }
  for (auto const &g : L.generators())
    gens.push_back(g);
  CatalogEntry e;
  e.name = "affine:" + std::to_string(q) + ":" + std::to_string(a) + ":" + linear_name;
  e.family = "affine";
  e.dim = a;
  e.q = q;
  e.formula_order = N * L.order();
  e.group = PermGroup(N, gens, e.formula_order);
  return e;
}

namespace {

Mat mat_mul(const Field &F, const Mat &A, const Mat &B)
{
  return {F.add(F.mul(A[0], B[0]), F.mul(A[1], B[2])), F.add(F.mul(A[0], B[1]), F.mul(A[1], B[3])),
          F.add(F.mul(A[2], B[0]), F.mul(A[3], B[2])), F.add(F.mul(A[2], B[1]), F.mul(A[3], B[3]))};
}

// Random element of SL(2,q) with the given trace.
std::optional<Mat> with_trace(const Field &F, Elt trace, std::mt19937_64 &rng)
{
  std::uniform_int_distribution<Elt> d(0, F.q() - 1);
  Elt a = d(rng), b = d(rng);
  if (b == 0)
    return std::nullopt;
  Elt dd = F.sub(trace, a);
  Elt c = F.mul(F.sub(F.mul(a, dd), 1), F.inv(b));
  return Mat{a, b, c, dd};
}

std::size_t matrix_closure_size(const Field &F, const std::vector<Mat> &gens, std::size_t cap)
{
  std::set<Mat> seen{identity(2)};
  std::vector<Mat> todo{identity(2)};
  while (!todo.empty() && seen.size() <= cap) {
    Mat x = todo.back();
    todo.pop_back();
    for (auto const &g : gens) {
      Mat y = mat_mul(F, g, x);
      if (seen.insert(y).second)
        todo.push_back(y);
    }
  }
  return seen.size();
}

}  // namespace

Sl25Embedding exceptional_sl25_affine_search(std::uint32_t q, std::uint64_t seed)
{
  static const std::uint32_t allowed[] = {9, 11, 19, 29, 59};
  if (std::find(std::begin(allowed), std::end(allowed), q) == std::end(allowed))
    throw ArgumentError("exceptional SL(2,5) affine groups need q in {9,11,19,29,59}");
  Field F(q);
  std::mt19937_64 rng(seed);
  // SL(2,5) = <A, B> with A of order 4 (trace 0), B of order 3 (trace -1)
  // and AB of order 5 or 10 (trace t with t^2 = 1 - t or t^2 = t + 1).
  Elt minus_one = F.neg(1);
  const std::uint64_t budget = 200000;
  for (std::uint64_t attempt = 1; attempt <= budget; ++attempt) {
    auto A = with_trace(F, 0, rng);
    auto B = with_trace(F, minus_one, rng);
    if (!A || !B)
      continue;
    Mat AB = mat_mul(F, *A, *B);
    Elt t = F.add(AB[0], AB[3]);
    Elt t2 = F.mul(t, t);
    if (t2 != F.sub(1, t) && t2 != F.add(t, 1))
      continue;
    if (matrix_closure_size(F, {*A, *B}, 120) != 120)
      continue;
    PermGroup S(q * q, {vector_matrix_action(F, 2, *A), vector_matrix_action(F, 2, *B)}, 120);
    if (S.order() != 120 || !is_perfect(S))
      continue;
    Mat Z{F.mu(), 0, 0, F.mu()};
    std::vector<Perm> lin = S.generators();
    lin.push_back(vector_matrix_action(F, 2, Z));
    PermGroup G0(q * q, lin, 60ULL * (q - 1));
    Sl25Embedding out;
    out.entry = affine_group(q, 2, G0, "sl25");
    out.entry.name = "sl25affine:" + std::to_string(q);
    out.entry.family = "sl25affine";
    out.entry.seed = seed;
    out.sl25 = S;
    out.attempts = attempt;
    return out;
  }
  throw BudgetError("SL(2,5) search budget exhausted; retry with a new seed");
}

CatalogEntry exceptional_sl25_affine(std::uint32_t q, std::uint64_t seed)
{
  return exceptional_sl25_affine_search(q, seed).entry;
}

CatalogEntry mathieu11()
{
  CatalogEntry e;
  e.name = "m11";
  e.family = "m11";
  e.formula_order = 7920;
  e.group = PermGroup(11, parse_perm_list(kMathieu11Generators, 11), 7920);
  if (e.group.order() != 7920 || transitivity_degree(e.group) != 4)
    throw InvariantError("bundled M11 generators fail verification");
  return e;
}

CatalogEntry catalog(const std::string &name)
{
  auto parts = split(name, ':');
  if (parts.empty())
    throw ArgumentError("empty catalog name");
  auto const &fam = parts[0];
  auto need = [&](std::size_t k) {
    if (parts.size() != k)
      throw ArgumentError("catalog name '" + name + "' has the wrong number of fields");
  };
  if (fam == "sym") {
    need(2);
    return symmetric(parse_uint(parts[1], name));
  }
  if (fam == "alt") {
    need(2);
    return alternating(parse_uint(parts[1], name));
  }
  if (fam == "psl" || fam == "pgl" || fam == "pgammal") {
    need(3);
    Flavor f = fam == "psl" ? Flavor::psl : fam == "pgl" ? Flavor::pgl : Flavor::pgammal;
    return projective_group(parse_uint(parts[1], name), parse_uint(parts[2], name), f);
  }
  if (fam == "gammal1") {
    need(2);
    std::uint32_t q = parse_uint(parts[1], name);
    CatalogEntry e;
    e.name = name;
    e.family = fam;
    e.q = q;
    e.dim = 1;
    e.group = gamma_l1(q);
    e.formula_order = e.group.order();
    return e;
  }
  if (fam == "m11") {
    need(1);
    return mathieu11();
  }
  if (fam == "sl25affine") {
    need(2);
    return exceptional_sl25_affine(parse_uint(parts[1], name));
  }
  if (fam == "affine") {
    need(4);
    std::uint32_t q = parse_uint(parts[1], name), a = parse_uint(parts[2], name);
    auto e = affine_group(q, a, linear_group_on_vectors(q, a, parts[3]), parts[3]);
    return e;
  }
  throw ArgumentError("unknown catalog name '" + name + "'");
}

GroupMorphism residual_projective_action(std::uint32_t dim, std::uint32_t q, Flavor flavor,
                                         Point omega)
{
  if (dim < 3)
    throw ArgumentError("residual projective action needs dimension at least 3");
  Field F(q);
  ProjectiveSpace P(F, dim);
  if (omega >= P.size())
    throw ArgumentError("base point out of range");
  PermGroup G = projective_group(dim, q, flavor).group;
  PermGroup H = stabilizer(G, {omega});
  // Lines through omega, numbered by their least point other than omega.
  std::vector<std::int64_t> block(P.size(), -1);
  std::size_t nblocks = 0;
  auto const &w = P.point(omega);
  for (std::size_t b = 0; b < P.size(); ++b) {
    if (b == omega || block[b] >= 0)
      continue;
    for (Elt lam = 0; lam < q; ++lam) {
      ProjectiveSpace::Vec v = P.point(b);
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = F.add(v[i], F.mul(lam, w[i]));
      block[P.index_of(v)] = static_cast<std::int64_t>(nblocks);
    }
    ++nblocks;
  }
  std::vector<Perm> ims;
  for (auto const &g : H.generators()) {
    std::vector<Point> im(nblocks);
    for (std::size_t b = 0; b < P.size(); ++b)
      if (b != omega)
        im[static_cast<std::size_t>(block[b])] =
            static_cast<Point>(block[g[static_cast<Point>(b)]]);
    ims.push_back(Perm(std::move(im)));
  }
  PermGroup image(nblocks, ims);
  return GroupMorphism(H, image, ims, false);
}

}  // namespace gtree
